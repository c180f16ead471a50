"""Vectors in l2(Z, C^n) with exact geometric tails.

The defect vectors of the shift model are finitely supported sequences plus
geometric rays ``base * ratio^k`` running to one of the two infinities.  A
:class:`LatticeVector` is a formal sum of

* a finitely supported part (``support``: position -> fiber vector),
* left rays, each covering ``j <= start`` with value ``base * ratio^(start-j)``,
* right rays, each covering ``j >= start`` with value ``base * ratio^(j-start)``,

with ``|ratio| < 1`` strictly, so that norms and inner products are finite
and closed-form (geometric series).  Keeping *lists* of rays makes the class
closed under addition, shifts and blockwise fiber maps without any need to
merge tails of different ratios; all verification happens through inner
products, which expand bilinearly over the pieces.

``materialize`` renders a window of the vector densely and is the
independent brute-force oracle for the tail algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Ray", "LatticeVector", "fiber_inner", "materialize"]


def fiber_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Fiber inner product, linear in the first argument."""
    return complex(np.vdot(b, a))


def _fiber(x, n: int | None = None) -> np.ndarray:
    v = np.asarray(x, dtype=complex).reshape(-1)
    if n is not None and v.shape[0] != n:
        raise ValueError(f"fiber vector of length {v.shape[0]}, expected {n}")
    return v


@dataclass(frozen=True)
class Ray:
    """One geometric ray: value ``base * ratio^distance`` from ``start``."""

    start: int
    base: np.ndarray
    ratio: complex

    def __post_init__(self):
        object.__setattr__(self, "base", _fiber(self.base))
        object.__setattr__(self, "ratio", complex(self.ratio))
        if abs(self.ratio) >= 1.0:
            raise ValueError(f"ray ratio must satisfy |ratio| < 1, got {self.ratio}")


class LatticeVector:
    """Element of l2(Z, C^n): finite support plus geometric rays."""

    __slots__ = ("n", "support", "left", "right")

    def __init__(self, n: int, support: dict | None = None,
                 left: tuple = (), right: tuple = ()):
        if n < 1:
            raise ValueError("fiber dimension must be >= 1")
        supp: dict[int, np.ndarray] = {}
        for j, x in (support or {}).items():
            v = _fiber(x, n)
            if np.any(v != 0):
                supp[int(j)] = v
        lrays, rrays = [], []
        for rays, out in ((left, lrays), (right, rrays)):
            for ray in rays:
                if not isinstance(ray, Ray):
                    ray = Ray(*ray)
                base = _fiber(ray.base, n)
                if not np.any(base != 0):
                    continue
                if ray.ratio == 0:
                    # a zero-ratio ray is a point mass at its start
                    supp[ray.start] = supp.get(ray.start, np.zeros(n, dtype=complex)) + base
                    if not np.any(supp[ray.start] != 0):
                        del supp[ray.start]
                    continue
                out.append(Ray(ray.start, base, ray.ratio))
        self.n = n
        self.support = supp
        self.left = tuple(lrays)
        self.right = tuple(rrays)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LatticeVector":
        return cls(n)

    @classmethod
    def point(cls, j: int, x) -> "LatticeVector":
        x = _fiber(x)
        return cls(x.shape[0], {j: x})

    # -- pointwise access --------------------------------------------------

    def value_at(self, j: int) -> np.ndarray:
        v = self.support.get(j, np.zeros(self.n, dtype=complex)).copy()
        for ray in self.left:
            if j <= ray.start:
                v = v + ray.base * ray.ratio ** (ray.start - j)
        for ray in self.right:
            if j >= ray.start:
                v = v + ray.base * ray.ratio ** (j - ray.start)
        return v

    @property
    def is_finitely_supported(self) -> bool:
        return not self.left and not self.right

    def support_bounds(self) -> tuple[int, int]:
        """Smallest/largest index with an explicit piece (ray starts count)."""
        idx = list(self.support)
        idx += [r.start for r in self.left] + [r.start for r in self.right]
        if not idx:
            return 0, 0
        return min(idx), max(idx)

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        if not isinstance(other, LatticeVector):
            return NotImplemented
        if other.n != self.n:
            raise ValueError("fiber dimension mismatch")
        supp = {j: x.copy() for j, x in self.support.items()}
        for j, x in other.support.items():
            supp[j] = supp.get(j, np.zeros(self.n, dtype=complex)) + x
        return LatticeVector(self.n, supp, self.left + other.left,
                             self.right + other.right)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return self + (-1.0) * other

    def __neg__(self) -> "LatticeVector":
        return (-1.0) * self

    def __rmul__(self, c) -> "LatticeVector":
        c = complex(c)
        supp = {j: c * x for j, x in self.support.items()}
        left = tuple(Ray(r.start, c * r.base, r.ratio) for r in self.left)
        right = tuple(Ray(r.start, c * r.base, r.ratio) for r in self.right)
        return LatticeVector(self.n, supp, left, right)

    def __mul__(self, c) -> "LatticeVector":
        return self.__rmul__(c)

    def shifted(self, k: int = 1) -> "LatticeVector":
        """The shift ``(U^k v)_j = v_{j-k}`` (exact on rays)."""
        supp = {j + k: x for j, x in self.support.items()}
        left = tuple(Ray(r.start + k, r.base, r.ratio) for r in self.left)
        right = tuple(Ray(r.start + k, r.base, r.ratio) for r in self.right)
        return LatticeVector(self.n, supp, left, right)

    def map_fiber(self, matrix) -> "LatticeVector":
        """Apply one fiber matrix at every position."""
        M = np.asarray(matrix, dtype=complex)
        supp = {j: M @ x for j, x in self.support.items()}
        left = tuple(Ray(r.start, M @ r.base, r.ratio) for r in self.left)
        right = tuple(Ray(r.start, M @ r.base, r.ratio) for r in self.right)
        return LatticeVector(self.n, supp, left, right)

    def map_blockwise(self, m_minus, m_plus) -> "LatticeVector":
        """Apply ``m_minus`` at positions <= 0 and ``m_plus`` at positions >= 1.

        Rays crossing the block boundary are split exactly: the part on the
        wrong side of the boundary becomes explicit support entries.
        """
        Mm = np.asarray(m_minus, dtype=complex)
        Mp = np.asarray(m_plus, dtype=complex)
        supp: dict[int, np.ndarray] = {}

        def put(j: int, x: np.ndarray) -> None:
            supp[j] = supp.get(j, np.zeros(self.n, dtype=complex)) + x

        for j, x in self.support.items():
            put(j, (Mm if j <= 0 else Mp) @ x)
        left, right = [], []
        for ray in self.left:
            if ray.start <= 0:
                left.append(Ray(ray.start, Mm @ ray.base, ray.ratio))
            else:
                for j in range(1, ray.start + 1):
                    put(j, Mp @ (ray.base * ray.ratio ** (ray.start - j)))
                left.append(Ray(0, Mm @ (ray.base * ray.ratio ** ray.start), ray.ratio))
        for ray in self.right:
            if ray.start >= 1:
                right.append(Ray(ray.start, Mp @ ray.base, ray.ratio))
            else:
                for j in range(ray.start, 1):
                    put(j, Mm @ (ray.base * ray.ratio ** (j - ray.start)))
                right.append(Ray(1, Mp @ (ray.base * ray.ratio ** (1 - ray.start)), ray.ratio))
        return LatticeVector(self.n, supp, tuple(left), tuple(right))

    def simplify(self) -> "LatticeVector":
        """Merge rays of equal ratio on each side (exactly, no dropping).

        Rays sharing a ratio are rebased to a common start with the overhang
        folded into the support, then added.  The represented vector is
        unchanged; the point is that differences of vectors built from the
        same tails cancel inside the ray bases, so norms of near-zero formal
        sums come out at rounding level instead of sqrt(rounding).
        """
        supp = {j: x.copy() for j, x in self.support.items()}

        def put(j: int, x: np.ndarray) -> None:
            supp[j] = supp.get(j, np.zeros(self.n, dtype=complex)) + x

        def merge(rays: tuple, left: bool) -> list:
            groups: dict[complex, list[Ray]] = {}
            for ray in rays:
                groups.setdefault(ray.ratio, []).append(ray)
            out = []
            for ratio, group in groups.items():
                target = min(r.start for r in group) if left else max(r.start for r in group)
                base = np.zeros(self.n, dtype=complex)
                for r in group:
                    gap = (r.start - target) if left else (target - r.start)
                    # fold the overhang between target and the ray's own start
                    for step in range(gap):
                        j = (target + gap - step) if left else (target - gap + step)
                        put(j, r.base * ratio ** step)
                    base = base + r.base * ratio ** gap
                out.append(Ray(target, base, ratio))
            return out

        return LatticeVector(self.n, supp, tuple(merge(self.left, True)),
                             tuple(merge(self.right, False)))

    # -- inner products ----------------------------------------------------

    def inner(self, other: "LatticeVector") -> complex:
        """Closed-form l2 inner product, linear in ``self``."""
        if other.n != self.n:
            raise ValueError("fiber dimension mismatch")
        acc = 0.0 + 0.0j
        # support x support
        for j, x in self.support.items():
            y = other.support.get(j)
            if y is not None:
                acc += fiber_inner(x, y)
        # support x rays (both directions)
        acc += _support_vs_rays(self.support, other, conj_side="other")
        acc += _support_vs_rays(other.support, self, conj_side="self")
        # rays x rays
        for r1 in self.left:
            for r2 in other.left:
                acc += _left_left(r1, r2)
            for r2 in other.right:
                acc += _cross(r1, r2, left_first=True)
        for r1 in self.right:
            for r2 in other.right:
                acc += _right_right(r1, r2)
            for r2 in other.left:
                acc += _cross(r2, r1, left_first=False)
        return complex(acc)

    def norm2(self) -> float:
        v = self.simplify() if (self.left or self.right) else self
        return max(v.inner(v).real, 0.0)

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (f"LatticeVector(n={self.n}, support at {sorted(self.support)}, "
                f"{len(self.left)} left / {len(self.right)} right rays)")


def _ray_value(ray: Ray, j: int, left: bool) -> np.ndarray:
    k = (ray.start - j) if left else (j - ray.start)
    return ray.base * ray.ratio ** k


def _support_vs_rays(support: dict, rayvec: LatticeVector, conj_side: str) -> complex:
    acc = 0.0 + 0.0j
    for j, x in support.items():
        for ray in rayvec.left:
            if j <= ray.start:
                y = _ray_value(ray, j, left=True)
                acc += fiber_inner(x, y) if conj_side == "other" else fiber_inner(y, x)
        for ray in rayvec.right:
            if j >= ray.start:
                y = _ray_value(ray, j, left=False)
                acc += fiber_inner(x, y) if conj_side == "other" else fiber_inner(y, x)
    return acc


def _left_left(r1: Ray, r2: Ray) -> complex:
    m = min(r1.start, r2.start)
    q = r1.ratio * np.conj(r2.ratio)
    head = fiber_inner(r1.base * r1.ratio ** (r1.start - m),
                       r2.base * r2.ratio ** (r2.start - m))
    return head / (1.0 - q)


def _right_right(r1: Ray, r2: Ray) -> complex:
    m = max(r1.start, r2.start)
    q = r1.ratio * np.conj(r2.ratio)
    head = fiber_inner(r1.base * r1.ratio ** (m - r1.start),
                       r2.base * r2.ratio ** (m - r2.start))
    return head / (1.0 - q)


def _cross(left_ray: Ray, right_ray: Ray, left_first: bool) -> complex:
    # overlap of j <= left_ray.start with j >= right_ray.start is finite
    lo, hi = right_ray.start, left_ray.start
    acc = 0.0 + 0.0j
    for j in range(lo, hi + 1):
        lv = _ray_value(left_ray, j, left=True)
        rv = _ray_value(right_ray, j, left=False)
        acc += fiber_inner(lv, rv) if left_first else fiber_inner(rv, lv)
    return acc


def materialize(v: LatticeVector, window: int = 64) -> np.ndarray:
    """Render ``v`` densely on ``[-window, window]``; row ``j + window`` is v_j.

    Brute-force cross-check for the closed-form tail algebra; the truncation
    error of a ray is bounded by ``|ratio|^window`` times its base norm.
    """
    out = np.zeros((2 * window + 1, v.n), dtype=complex)
    for j in range(-window, window + 1):
        out[j + window] = v.value_at(j)
    return out
