"""Affine schemes, jets over prime fields, enumeration and exact counting.

An n-jet over F_p is stored densely as N coefficient tuples of length n+1.
Enumeration extends jets one level at a time: with theta fixed, the
coefficient of t^(n+1) in f(theta + t^(n+1) z) is affine in z with matrix
the Jacobian at theta(0).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .rings.field import is_prime, rank_mod_p, solve_mod_p, span_points
from .rings.poly import MultiPolynomial, eval_coeffs
from .rings.series import AtLeast, TruncatedSeries, Valuation

DEFAULT_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, what: str = "nodes") -> None:
        self.budget = budget
        super().__init__(f"budget of {budget} {what} exceeded")


class AffineScheme:
    """Closed subscheme of A^N cut out by integer polynomials, with declared dimension d."""

    def __init__(
        self,
        generators: Sequence[MultiPolynomial],
        dim: int,
        var_names: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ) -> None:
        gens = list(generators)
        if not gens:
            raise ValueError("at least one generator is required")
        N = gens[0].nvars
        if any(g.nvars != N for g in gens):
            raise ValueError("generators live in different polynomial rings")
        if any(g.is_zero() for g in gens):
            raise ValueError("generators must be nonzero")
        if not 0 <= dim <= N:
            raise ValueError(f"declared dimension {dim} outside 0..{N}")
        self.generators = tuple(gens)
        self.N = N
        self.m = len(gens)
        self.d = dim
        self.var_names = tuple(var_names) if var_names else tuple(f"x{i + 1}" for i in range(N))
        self.name = name
        self._partials = tuple(tuple(g.partial(j) for j in range(N)) for g in gens)

    @property
    def r(self) -> int:
        return self.N - self.d

    @property
    def partials(self) -> Tuple[Tuple[MultiPolynomial, ...], ...]:
        return self._partials

    def with_generators(self, generators: Sequence[MultiPolynomial], name: Optional[str] = None) -> "AffineScheme":
        return AffineScheme(generators, self.d, self.var_names, name or self.name)

    def to_dict(self) -> dict:
        return {
            "nvars": self.N,
            "vars": list(self.var_names),
            "generators": [g.to_string(self.var_names) for g in self.generators],
            "dim": self.d,
        }

    def __repr__(self) -> str:
        gens = ", ".join(g.to_string(self.var_names) for g in self.generators)
        return f"AffineScheme(V({gens}) in A^{self.N}, d={self.d})"


@dataclass(frozen=True)
class Jet:
    p: int
    n: int
    coords: Tuple[Tuple[int, ...], ...]

    @classmethod
    def make(cls, p: int, n: int, coords: Sequence[Sequence[int]]) -> "Jet":
        fixed = []
        for c in coords:
            c = [x % p for x in list(c)[: n + 1]]
            fixed.append(tuple(c + [0] * (n + 1 - len(c))))
        return cls(p, n, tuple(fixed))

    @classmethod
    def constant(cls, p: int, n: int, point: Sequence[int]) -> "Jet":
        return cls.make(p, n, [[x] for x in point])

    @property
    def N(self) -> int:
        return len(self.coords)

    def point(self) -> Tuple[int, ...]:
        return tuple(c[0] for c in self.coords)

    def truncate(self, l: int) -> "Jet":
        if l > self.n:
            raise ValueError(f"cannot truncate a level-{self.n} jet to level {l}")
        return Jet(self.p, l, tuple(c[: l + 1] for c in self.coords))

    def extend(self, z: Sequence[int]) -> "Jet":
        """Append one new coefficient per coordinate."""
        return Jet(self.p, self.n + 1, tuple(c + (x % self.p,) for c, x in zip(self.coords, z)))

    def series(self, modulus: Optional[int] = None) -> List[TruncatedSeries]:
        M = self.n + 1 if modulus is None else modulus
        return [TruncatedSeries(self.p, M, c) for c in self.coords]

    def to_list(self) -> List[List[int]]:
        return [list(c) for c in self.coords]

    def __str__(self) -> str:
        def fmt(c):
            parts = []
            for k, a in enumerate(c):
                if a:
                    mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                    parts.append(str(a) if not mono else (mono if a == 1 else f"{a}{mono}"))
            return " + ".join(parts) or "0"

        return "(" + ", ".join(fmt(c) for c in self.coords) + f") mod t^{self.n + 1}"


def _check_arity(X: AffineScheme, theta: Jet) -> None:
    if theta.N != X.N:
        raise ValueError(f"jet has {theta.N} coordinates, scheme lives in A^{X.N}")


def generator_values(X: AffineScheme, theta: Jet, modulus: Optional[int] = None) -> List[List[int]]:
    M = theta.n + 1 if modulus is None else modulus
    pts = [(list(c) + [0] * M)[:M] for c in theta.coords]
    return [eval_coeffs(f, pts, M, theta.p) for f in X.generators]


def verify_jet(X: AffineScheme, theta: Jet) -> bool:
    _check_arity(X, theta)
    return all(not any(v) for v in generator_values(X, theta))


def base_points(X: AffineScheme, p: int, budget: int = DEFAULT_BUDGET) -> List[Tuple[int, ...]]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p ** X.N > budget:
        raise BudgetExceeded(budget, "points")
    gens = X.generators
    return [c for c in product(range(p), repeat=X.N) if all(f.eval_mod(c, p) == 0 for f in gens)]


def jacobian_at_point(X: AffineScheme, point: Sequence[int], p: int) -> List[List[int]]:
    return [[d.eval_mod(point, p) for d in row] for row in X.partials]


@dataclass(frozen=True)
class ExtensionSet:
    base: Jet
    particular: Tuple[int, ...]
    kernel: Tuple[Tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def size(self) -> int:
        return self.base.p ** len(self.kernel)

    def points(self) -> List[Tuple[int, ...]]:
        """New coefficient vectors, lexicographically sorted."""
        return sorted(span_points(self.particular, self.kernel, self.base.p))

    def jets(self) -> Iterator[Jet]:
        for z in self.points():
            yield self.base.extend(z)


def extend_jet(X: AffineScheme, theta: Jet, jac0: Optional[List[List[int]]] = None) -> Optional[ExtensionSet]:
    """Fiber of the truncation L_{n+1}(X) -> L_n(X) over theta, or None if empty."""
    p, n = theta.p, theta.n
    vals = generator_values(X, theta, n + 2)
    rhs = [-v[n + 1] % p for v in vals]
    if jac0 is None:
        jac0 = jacobian_at_point(X, theta.point(), p)
    sol = solve_mod_p(jac0, rhs, p, X.N)
    if sol is None:
        return None
    part, ker = sol
    return ExtensionSet(theta, tuple(part), tuple(tuple(v) for v in ker))


class _Counter:
    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.nodes = 0

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.nodes > self.budget:
            raise BudgetExceeded(self.budget)


def _dfs(X: AffineScheme, theta: Jet, n: int, jac0, counter: _Counter) -> Iterator[Jet]:
    counter.tick()
    if theta.n == n:
        yield theta
        return
    ext = extend_jet(X, theta, jac0)
    if ext is None:
        return
    for child in ext.jets():
        yield from _dfs(X, child, n, jac0, counter)


def _subtree(args) -> List[Jet]:
    X, point, n, p, budget = args
    counter = _Counter(budget)
    theta = Jet.constant(p, 0, point)
    return list(_dfs(X, theta, n, jacobian_at_point(X, point, p), counter))


def enumerate_jets(
    X: AffineScheme, n: int, p: int, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> Iterator[Jet]:
    """All F_p-points of L_n(X), depth first from the base points, lexicographic order.

    With ``workers > 1`` subtrees under distinct base points are explored in
    separate processes; results are merged back in base-point order so the
    stream is identical to the sequential one. Each worker gets the full
    budget for its own subtree.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    points = base_points(X, p, budget)
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_subtree, [(X, c, n, p, budget) for c in points]):
                yield from chunk
        return
    counter = _Counter(budget)
    for c in points:
        yield from _dfs(X, Jet.constant(p, 0, c), n, jacobian_at_point(X, c, p), counter)


# -- exact counting -------------------------------------------------------
#
# The tree counter works with polynomials whose coefficients lie in
# F_p[t]/(t^k): a state is a list of equations (poly, k) in nv variables and
# asks for #{y in (F_p[t]/t^K)^nv : poly(y) = 0 mod t^k for each equation}.
# Fixing y(0) = c and writing y = c + t*y', each equation becomes divisible
# by t^v with v >= 1; dividing lowers its precision by v.  Where the mod-t
# Jacobian has full row rank the remaining count is a power of p (Hensel).


def _tpoly_from_int(f: MultiPolynomial, k: int, p: int) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    out = {}
    for e, c in f.items():
        c %= p
        if c and k:
            out[e] = (c,) + (0,) * (k - 1)
    return out


def _tmul(a: Sequence[int], b: Sequence[int], k: int, p: int) -> List[int]:
    out = [0] * k
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), k - i)):
                if b[j]:
                    out[i + j] += x * b[j]
    return [v % p for v in out]


def _canon(eqs, nv: int, K: int):
    return (nv, K, tuple(sorted((k, tuple(sorted(poly.items()))) for poly, k in eqs)))


def _substitute(poly, c: Sequence[int], k: int, p: int):
    """poly(c + t*y) as a polynomial in y over F_p[t]/(t^k)."""
    out: Dict[Tuple[int, ...], List[int]] = {}
    # binomial expansions of (c_j + t y_j)^a, cached per (j, a)
    cache: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for e, coeff in poly.items():
        acc = [((), 1, 0)]  # (exponent prefix, scalar, t-power)
        for j, a in enumerate(e):
            key = (j, a)
            if key not in cache:
                cache[key] = [(b, comb(a, b) * pow(c[j], a - b, p) % p) for b in range(a + 1)]
            nxt = []
            for pre, s, tp in acc:
                for b, w in cache[key]:
                    if w and tp + b < k:
                        nxt.append((pre + (b,), s * w % p, tp + b))
            acc = nxt
        for mono, s, tp in acc:
            shifted = [0] * k
            for i, x in enumerate(coeff):
                if x and i + tp < k:
                    shifted[i + tp] = x * s % p
            cur = out.get(mono)
            if cur is None:
                out[mono] = shifted
            else:
                out[mono] = [(u + v) % p for u, v in zip(cur, shifted)]
    return {mono: tuple(v) for mono, v in out.items() if any(v)}


class TreeCounter:
    def __init__(self, p: int, budget: int = DEFAULT_BUDGET) -> None:
        self.p = p
        self.counter = _Counter(budget)
        self.memo: Dict = {}

    def count(self, eqs, nv: int, K: int) -> int:
        p = self.p
        eqs = [(poly, k) for poly, k in eqs if k > 0 and poly]
        if not eqs:
            return p ** (nv * K)
        used = sorted({j for poly, _ in eqs for e in poly for j, a in enumerate(e) if a})
        free = nv - len(used)
        if free:
            eqs = [({tuple(e[j] for j in used): v for e, v in poly.items()}, k) for poly, k in eqs]
        nu = len(used)
        Kmax = max(k for _, k in eqs)
        scale = p ** (free * K + nu * (K - Kmax))
        key = _canon(eqs, nu, Kmax)
        if key not in self.memo:
            self.memo[key] = self._count_at(eqs, nu, Kmax)
        return scale * self.memo[key]

    def _count_at(self, eqs, nv: int, K: int) -> int:
        p = self.p
        # constant-term and Jacobian data at t = 0
        const_polys = []
        for poly, k in eqs:
            const_polys.append({e: v[0] for e, v in poly.items() if v[0]})
        total = 0
        for c in product(range(p), repeat=nv):
            self.counter.tick()
            ok = True
            for cp in const_polys:
                s = 0
                for e, v in cp.items():
                    term = v
                    for j, a in enumerate(e):
                        if a:
                            term = term * pow(c[j], a, p)
                    s += term
                if s % p:
                    ok = False
                    break
            if not ok:
                continue
            jac = []
            for cp in const_polys:
                row = []
                for j in range(nv):
                    s = 0
                    for e, v in cp.items():
                        a = e[j]
                        if a:
                            term = v * a
                            for i, b in enumerate(e):
                                bb = b - 1 if i == j else b
                                if bb:
                                    term = term * pow(c[i], bb, p)
                            s += term
                    row.append(s % p)
                jac.append(row)
            if rank_mod_p(jac, p) == len(eqs):
                total += p ** (nv * (K - 1) - sum(k - 1 for _, k in eqs))
                continue
            new = []
            for poly, k in eqs:
                sub = _substitute(poly, c, k, p)
                if not sub:
                    continue
                v = min(next(i for i, x in enumerate(co) if x) for co in sub.values())
                if v >= k:
                    continue
                new.append(({e: co[v:] for e, co in sub.items()}, k - v))
            # y' lives mod t^(K-1)
            total += self.count(new, nv, K - 1)
        return total


def _count_tree(X: AffineScheme, n: int, p: int, budget: int) -> int:
    K = n + 1
    # generators vanishing mod p impose nothing and are dropped by count()
    eqs = [(_tpoly_from_int(f, K, p), K) for f in X.generators]
    return TreeCounter(p, budget).count(eqs, X.N, K)


def _count_enumerate(X: AffineScheme, n: int, p: int, budget: int, workers: int = 1) -> int:
    if n == 0:
        return len(base_points(X, p, budget))
    total = 0
    counter = _Counter(budget)
    for theta in enumerate_jets(X, n - 1, p, budget, workers):
        counter.tick()
        ext = extend_jet(X, theta)
        if ext is not None:
            total += ext.size()
    return total


def count_jets(
    X: AffineScheme, n: int, p: int, budget: int = DEFAULT_BUDGET, method: str = "tree", workers: int = 1
) -> int:
    """|L_n(X)(F_p)|.

    ``method="tree"`` (default) uses the Hensel tree counter; ``"enumerate"``
    walks the jet tree to level n-1 and counts the last level by kernel
    dimension. Both are exact and must agree.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("level must be nonnegative")
    if method == "tree":
        return _count_tree(X, n, p, budget)
    if method == "enumerate":
        return _count_enumerate(X, n, p, budget, workers)
    raise ValueError(f"unknown counting method {method!r}")


def ideal_order_along_jet(X: AffineScheme, theta: Jet) -> Valuation:
    """min_i ord_t f_i(theta) in F_p[t]/(t^(n+1)); AtLeast(n+1) when theta lies on X."""
    _check_arity(X, theta)
    best = theta.n + 1
    for v in generator_values(X, theta):
        for i, c in enumerate(v):
            if c:
                best = min(best, i)
                break
    return best if best <= theta.n else AtLeast(theta.n + 1)


def ambient_jets(N: int, n: int, p: int, budget: int = DEFAULT_BUDGET) -> Iterator[Jet]:
    if p ** (N * (n + 1)) > budget:
        raise BudgetExceeded(budget, "ambient jets")
    for flat in product(range(p), repeat=N * (n + 1)):
        yield Jet(p, n, tuple(tuple(flat[i * (n + 1):(i + 1) * (n + 1)]) for i in range(N)))


def contact_count(
    X: AffineScheme, n: int, p: int, budget: int = DEFAULT_BUDGET, method: str = "identity"
) -> int:
    """#{theta in L_n(A^N)(F_p) : ord_t of I_X along theta is exactly n}.

    ``identity`` uses p^N * #L_{n-1}(X) - #L_n(X) (n >= 1) and
    p^N - #X(F_p) at n = 0; ``direct`` enumerates ambient jets.
    """
    if method == "direct":
        return sum(1 for th in ambient_jets(X.N, n, p, budget) if ideal_order_along_jet(X, th) == n)
    if method != "identity":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return p ** X.N - count_jets(X, 0, p, budget)
    return p ** X.N * count_jets(X, n - 1, p, budget) - count_jets(X, n, p, budget)
