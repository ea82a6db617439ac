"""Dynamic k-dimensional orthogonal range tree.

A dimension-``d`` tree is a weight-balanced binary search tree ordered by
coordinate ``d`` (ties broken by the remaining coordinates, so every point has
a distinct key).  Each internal node carries an associated dimension-``d-1``
tree over the points of its subtree.  There are no rotations: when an update
leaves a node with a child heavier than ``alpha * w(node)``, the highest such
node on the update path is rebuilt from scratch.

Small subtrees are stored as flat sorted arrays ("grafts").  A subtree of
dimension ``d`` and weight ``w`` is an array exactly when
``d * w < comb(c + d, d)``.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right, insort
from operator import itemgetter
from typing import Callable, Iterable, Optional, Sequence

import numba
import numpy as np

INF = math.inf

# Leaf ranges at least this long are filtered by the compiled scan.
SCAN_MIN = 24

Point = tuple


class DuplicatePointError(ValueError):
    pass


class PointNotFoundError(KeyError):
    pass


@numba.njit(cache=True)
def _scan_first(arr, a, b, lo, hi, c):  # pragma: no cover - jitted
    for j in range(a, b):
        ok = True
        for i in range(c):
            x = arr[j, i]
            if x < lo[i] or x > hi[i]:
                ok = False
                break
        if ok:
            return j
    return -1


@numba.njit(cache=True)
def _scan_all(arr, a, b, lo, hi, c):  # pragma: no cover - jitted
    out = np.empty(b - a, dtype=np.int64)
    n = 0
    for j in range(a, b):
        ok = True
        for i in range(c):
            x = arr[j, i]
            if x < lo[i] or x > hi[i]:
                ok = False
                break
        if ok:
            out[n] = j
            n += 1
    return out[:n]


@numba.njit(cache=True)
def _scan_cover(arr, n, q):  # pragma: no cover - jitted
    """Rows of ``arr[:n]`` weakly above ``q``, or ``[-1]`` if one is weakly below.

    The rows are sorted by their last coordinate first.
    """
    k = arr.shape[1]
    last = q[k - 1]
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid, k - 1] <= last:
            lo = mid + 1
        else:
            hi = mid
    below_end = lo
    for j in range(below_end):
        ok = True
        for i in range(k - 1):
            if arr[j, i] > q[i]:
                ok = False
                break
        if ok:
            return np.full(1, -1, dtype=np.int64)
    lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if arr[mid, k - 1] < last:
            lo = mid + 1
        else:
            hi = mid
    out = np.empty(n - lo, dtype=np.int64)
    m = 0
    for j in range(lo, n):
        ok = True
        for i in range(k - 1):
            if arr[j, i] < q[i]:
                ok = False
                break
        if ok:
            out[m] = j
            m += 1
    return out[:m]


class _Leaf:
    """Graft array: points sorted by the tree key, plus a lazily built int matrix.

    The matrix keeps spare rows so that updates shift in place.
    """

    __slots__ = ("pts", "arr")

    def __init__(self, pts: list) -> None:
        self.pts = pts
        self.arr = None

    def matrix(self) -> np.ndarray:
        if self.arr is None:
            n = len(self.pts)
            self.arr = np.empty((n + n // 2 + 8, len(self.pts[0])), dtype=np.int64)
            self.arr[:n] = self.pts
        return self.arr

    def insert(self, i: int, p: Point) -> None:
        pts = self.pts
        pts.insert(i, p)
        arr = self.arr
        if arr is None:
            return
        n = len(pts)
        if n > len(arr):
            self.arr = None
            return
        arr[i + 1:n] = arr[i:n - 1]
        arr[i] = p

    def delete(self, i: int) -> None:
        pts = self.pts
        del pts[i]
        arr = self.arr
        if arr is not None:
            arr[i:len(pts)] = arr[i + 1:len(pts) + 1]


class _Box:
    """Query bounds as tuples, with float arrays made on first use."""

    __slots__ = ("lo", "hi", "_lo", "_hi")

    def __init__(self, lo, hi, lo_arr=None, hi_arr=None) -> None:
        self.lo = lo
        self.hi = hi
        self._lo = lo_arr
        self._hi = hi_arr

    def arrays(self):
        if self._lo is None:
            self._lo = np.array(self.lo, dtype=np.float64)
        if self._hi is None:
            self._hi = np.array(self.hi, dtype=np.float64)
        return self._lo, self._hi


class _Node:
    __slots__ = ("split", "left", "right", "w", "lo", "hi", "assoc")


def _weight(u) -> int:
    return u.w if type(u) is _Node else len(u.pts)


def default_graft(expected_n: Optional[int] = None, alpha: float = 0.75) -> int:
    """Graft constant ``c``: an estimate of the final tree height."""
    if not expected_n or expected_n < 2:
        return 12
    return max(1, math.ceil(math.log(expected_n) / math.log(1.0 / alpha)))


class RangeTree:
    """Set of ``k``-dimensional integer points answering box queries.

    Parameters
    ----------
    k : int
        Point arity.
    alpha : float, default 0.75
        Weight-balance factor, ``1/2 < alpha < 1``.
    graft : int, optional
        Graft constant ``c >= 1``.  Defaults to :func:`default_graft` of
        ``expected_n``.
    points : iterable of tuple, optional
        Initial contents, built as a perfectly balanced tree.
    """

    def __init__(
        self,
        k: int,
        alpha: float = 0.75,
        graft: Optional[int] = None,
        points: Iterable[Point] = (),
        expected_n: Optional[int] = None,
    ) -> None:
        if k < 1:
            raise ValueError(f"dimension must be positive, got {k}")
        if not 0.5 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (1/2, 1), got {alpha}")
        if graft is None:
            graft = default_graft(expected_n, alpha)
        if graft < 1:
            raise ValueError(f"graft constant must be >= 1, got {graft}")
        self.k = k
        self.alpha = alpha
        self.graft = graft
        self._threshold = [0] + [math.comb(graft + d, d) for d in range(1, k + 1)]
        self._corner = ((-INF,) * k, (INF,) * k)
        self._unbounded = tuple(np.array(c, dtype=np.float64) for c in self._corner)
        self._keys: list[Callable] = [None]  # type: ignore[list-item]
        for d in range(1, k + 1):
            perm = list(range(d - 1, -1, -1)) + list(range(d, k))
            self._keys.append(itemgetter(*perm) if len(perm) > 1 else (lambda p: (p[0],)))
        raw = [tuple(p) for p in points]
        for p in raw:
            self._check_arity(p)
        pts = sorted(set(raw), key=self._keys[k])
        if len(pts) != len(raw):
            raise DuplicatePointError("duplicate points in build input")
        self._root = self._build(pts, k)

    # -- construction -----------------------------------------------------

    def _check_arity(self, p: Point) -> None:
        if len(p) != self.k:
            raise ValueError(f"expected a {self.k}-dimensional point, got {p!r}")

    def _build(self, pts: list, d: int):
        """Build a dimension-``d`` subtree from points sorted by the ``d`` key."""
        n = len(pts)
        if d * n < self._threshold[d]:
            return _Leaf(list(pts))
        mid = n // 2
        u = _Node()
        u.left = self._build(pts[:mid], d)
        u.right = self._build(pts[mid:], d)
        u.split = self._keys[d](pts[mid - 1])
        u.w = n
        u.lo = pts[0][d - 1]
        u.hi = pts[-1][d - 1]
        u.assoc = self._build(sorted(pts, key=self._keys[d - 1]), d - 1) if d > 1 else None
        return u

    def _collect(self, u, out: list) -> None:
        stack = [u]
        while stack:
            u = stack.pop()
            if type(u) is _Node:
                stack.append(u.right)
                stack.append(u.left)
            else:
                out.extend(u.pts)

    def _rebuild(self, u, d: int, extra: Optional[Point] = None, drop: Optional[Point] = None):
        pts: list = []
        self._collect(u, pts)
        if drop is not None:
            pts.remove(drop)
        if extra is not None:
            insort(pts, extra, key=self._keys[d])
        return self._build(pts, d)

    # -- updates ----------------------------------------------------------

    def _refresh_bounds(self, u: _Node, d: int) -> None:
        c = d - 1
        left, right = u.left, u.right
        u.lo = left.lo if type(left) is _Node else left.pts[0][c]
        u.hi = right.hi if type(right) is _Node else right.pts[-1][c]

    def _insert(self, root, p: Point, d: int):
        keyf = self._keys[d]
        key = keyf(p)
        path: list[_Node] = []
        u = root
        while type(u) is _Node:
            path.append(u)
            u = u.left if key <= u.split else u.right
        leaf = u
        i = bisect_left(leaf.pts, key, key=keyf)
        if i < len(leaf.pts) and leaf.pts[i] == p:
            raise DuplicatePointError(f"point {p!r} already stored")

        alpha = self.alpha
        cut = len(path)
        for j, u in enumerate(path):
            child = u.left if key <= u.split else u.right
            if _weight(child) + 1 > alpha * (u.w + 1):
                cut = j
                break

        c = d - 1
        x = p[c]
        for u in path[:cut]:
            u.w += 1
            if x < u.lo:
                u.lo = x
            if x > u.hi:
                u.hi = x
            if d > 1:
                u.assoc = self._insert(u.assoc, p, d - 1)

        if cut < len(path):
            new = self._rebuild(path[cut], d, extra=p)
            old = path[cut]
        else:
            leaf.insert(i, p)
            if d * len(leaf.pts) < self._threshold[d]:
                return root
            new = self._build(leaf.pts, d)
            old = leaf
        if cut == 0 and old is root:
            return new
        parent = path[cut - 1]
        if parent.left is old:
            parent.left = new
        else:
            parent.right = new
        return root

    def _delete(self, root, p: Point, d: int):
        keyf = self._keys[d]
        key = keyf(p)
        path: list[_Node] = []
        u = root
        while type(u) is _Node:
            path.append(u)
            u = u.left if key <= u.split else u.right
        leaf = u
        i = bisect_left(leaf.pts, key, key=keyf)
        if i >= len(leaf.pts) or leaf.pts[i] != p:
            raise PointNotFoundError(p)

        alpha = self.alpha
        threshold = self._threshold[d]
        cut = len(path)
        for j, u in enumerate(path):
            w = u.w - 1
            other = u.right if key <= u.split else u.left
            if d * w < threshold or _weight(other) > alpha * w:
                cut = j
                break

        for u in path[:cut]:
            u.w -= 1
            if d > 1:
                u.assoc = self._delete(u.assoc, p, d - 1)

        if cut < len(path):
            old = path[cut]
            new = self._rebuild(old, d, drop=p)
            if cut == 0:
                return new
            parent = path[cut - 1]
            if parent.left is old:
                parent.left = new
            else:
                parent.right = new
        else:
            leaf.delete(i)
        for u in reversed(path[:cut]):
            self._refresh_bounds(u, d)
        return root

    def insert(self, p: Sequence[int]) -> None:
        p = tuple(p)
        self._check_arity(p)
        self._root = self._insert(self._root, p, self.k)

    def delete(self, p: Sequence[int]) -> None:
        p = tuple(p)
        self._check_arity(p)
        self._root = self._delete(self._root, p, self.k)

    # -- queries ----------------------------------------------------------

    def _query(self, u, d: int, box: _Box, out: list) -> None:
        lo, hi = box.lo, box.hi
        c = d - 1
        lc, hc = lo[c], hi[c]
        while type(u) is _Node:
            if u.hi < lc or u.lo > hc:
                return
            if lc <= u.lo and u.hi <= hc:
                if d == 1:
                    self._collect(u, out)
                else:
                    self._query(u.assoc, c, box, out)
                return
            self._query(u.left, d, box, out)
            u = u.right
        pts = u.pts
        if not pts:
            return
        keyf = self._keys[d]
        a = 0 if lc == -INF else bisect_left(pts, (lc,), key=keyf)
        b = len(pts) if hc == INF else bisect_right(pts, (hc, INF), key=keyf)
        if c == 0:
            out.extend(pts[a:b])
            return
        if b - a >= SCAN_MIN:
            lo_a, hi_a = box.arrays()
            out.extend([pts[j] for j in _scan_all(u.matrix(), a, b, lo_a, hi_a, c)])
            return
        for j in range(a, b):
            q = pts[j]
            for i in range(c):
                x = q[i]
                if x < lo[i] or x > hi[i]:
                    break
            else:
                out.append(q)

    def _any(self, u, d: int, box: _Box) -> bool:
        lo, hi = box.lo, box.hi
        c = d - 1
        lc, hc = lo[c], hi[c]
        while type(u) is _Node:
            if u.hi < lc or u.lo > hc:
                return False
            if lc <= u.lo and u.hi <= hc:
                return True if d == 1 else self._any(u.assoc, c, box)
            if self._any(u.left, d, box):
                return True
            u = u.right
        pts = u.pts
        if not pts:
            return False
        keyf = self._keys[d]
        a = 0 if lc == -INF else bisect_left(pts, (lc,), key=keyf)
        b = len(pts) if hc == INF else bisect_right(pts, (hc, INF), key=keyf)
        if c == 0:
            return a < b
        if b - a >= SCAN_MIN:
            lo_a, hi_a = box.arrays()
            return _scan_first(u.matrix(), a, b, lo_a, hi_a, c) >= 0
        for j in range(a, b):
            q = pts[j]
            for i in range(c):
                x = q[i]
                if x < lo[i] or x > hi[i]:
                    break
            else:
                return True
        return False

    def _box(self, lo, hi) -> _Box:
        if len(lo) != self.k or len(hi) != self.k:
            raise ValueError(f"box bounds must have {self.k} coordinates")
        # one-sided boxes are the common case; reuse the unbounded side
        return _Box(
            lo, hi,
            self._unbounded[0] if lo == self._corner[0] else None,
            self._unbounded[1] if hi == self._corner[1] else None,
        )

    def query(self, lo: Sequence[float], hi: Sequence[float]) -> list:
        """All stored points ``p`` with ``lo[i] <= p[i] <= hi[i]`` for every ``i``."""
        out: list = []
        self._query(self._root, self.k, self._box(lo, hi), out)
        return out

    def any(self, lo: Sequence[float], hi: Sequence[float]) -> bool:
        return self._any(self._root, self.k, self._box(lo, hi))

    def query_array(self, lo: Sequence[float], hi: Sequence[float]) -> np.ndarray:
        """Like :meth:`query`, as an ``(n, k)`` int64 array."""
        root = self._root
        k = self.k
        if type(root) is not _Leaf or k == 1 or len(root.pts) < SCAN_MIN:
            return np.array(self.query(lo, hi), dtype=np.int64).reshape(-1, k)
        box = self._box(lo, hi)
        pts = root.pts
        keyf = self._keys[k]
        lc, hc = lo[k - 1], hi[k - 1]
        a = 0 if lc == -INF else bisect_left(pts, (lc,), key=keyf)
        b = len(pts) if hc == INF else bisect_right(pts, (hc, INF), key=keyf)
        arr = root.matrix()
        lo_a, hi_a = box.arrays()
        return arr[_scan_all(arr, a, b, lo_a, hi_a, k - 1)]

    def insert_minimal(self, q: Sequence[int]) -> Optional[list]:
        """Insert ``q`` unless a stored point is weakly below it.

        Stored points weakly above ``q`` are deleted.  Returns None when
        ``q`` is rejected, else the deleted points.
        """
        q = tuple(q)
        self._check_arity(q)
        root = self._root
        if type(root) is _Leaf and len(root.pts) >= SCAN_MIN:
            hits = _scan_cover(root.matrix(), len(root.pts), q)
            if len(hits) and hits[0] < 0:
                return None
            removed = [root.pts[j] for j in hits]
            for j in hits[::-1]:
                root.delete(int(j))
        else:
            lo, hi = self._corner
            if self.any(lo, q):
                return None
            removed = self.query(q, hi)
            for r in removed:
                self.delete(r)
        self._root = self._insert(self._root, q, self.k)
        return removed

    # -- inspection -------------------------------------------------------

    def __len__(self) -> int:
        return _weight(self._root)

    def __bool__(self) -> bool:
        return _weight(self._root) > 0

    def __contains__(self, p) -> bool:
        p = tuple(p)
        keyf = self._keys[self.k]
        key = keyf(p)
        u = self._root
        while type(u) is _Node:
            u = u.left if key <= u.split else u.right
        i = bisect_left(u.pts, key, key=keyf)
        return i < len(u.pts) and u.pts[i] == p

    def __iter__(self):
        return iter(self.enumerate())

    def enumerate(self) -> list:
        """Points in total order (last coordinate most significant)."""
        out: list = []
        self._collect(self._root, out)
        return out

    def is_graft(self) -> bool:
        return type(self._root) is _Leaf

    def height(self) -> int:
        """Number of internal nodes on the longest root-to-leaf path (top dimension)."""

        def h(u) -> int:
            return 1 + max(h(u.left), h(u.right)) if type(u) is _Node else 0

        return h(self._root)

    def check_balance(self) -> int:
        """Assert the weight-balance and graft rules at every node, all dimensions.

        Returns the number of internal nodes visited.
        """
        alpha = self.alpha
        thr = self._threshold
        count = 0
        stack = [(self._root, self.k, True)]
        while stack:
            u, d, is_root = stack.pop()
            if type(u) is _Leaf:
                assert is_root or d * len(u.pts) < thr[d], "oversized graft array"
                continue
            count += 1
            w = u.w
            assert d * w >= thr[d], "undersized internal node"
            wl, wr = _weight(u.left), _weight(u.right)
            assert wl + wr == w, "weight mismatch"
            assert wl <= alpha * w and wr <= alpha * w, f"unbalanced node w={w} children=({wl},{wr})"
            stack.append((u.left, d, False))
            stack.append((u.right, d, False))
            if d > 1:
                stack.append((u.assoc, d - 1, True))
        return count

    def check_invariants(self) -> None:
        """Full structural check: order, bounds, weights, balance, association, potential."""
        self.check_balance()
        self._check(self._root, self.k)

    def _check(self, u, d: int) -> list:
        keyf = self._keys[d]
        if type(u) is _Leaf:
            keys = [keyf(p) for p in u.pts]
            assert keys == sorted(keys) and len(set(keys)) == len(keys)
            return u.pts
        left = self._check(u.left, d)
        right = self._check(u.right, d)
        assert all(keyf(p) <= u.split for p in left)
        assert all(keyf(p) > u.split for p in right)
        pts = left + right
        assert u.w == len(pts)
        assert u.lo == min(p[d - 1] for p in pts) and u.hi == max(p[d - 1] for p in pts)
        wl, wr = len(left), len(right)
        potential = (2 * max(wl, wr) - u.w) / (2 * self.alpha - 1)
        assert potential <= u.w + 1e-9
        if d > 1:
            inner = self._check(u.assoc, d - 1)
            assert sorted(inner) == sorted(pts), "associated tree disagrees with subtree"
        return pts
