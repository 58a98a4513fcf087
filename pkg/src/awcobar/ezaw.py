"""The Eilenberg-Zilber strong deformation retract.

shuffle:  C(K) (x) C(L)  ->  C(K x L)        (section, coalgebra map)
aw:       C(K x L)       ->  C(K) (x) C(L)   (retraction, front/back faces)
phi:      C(K x L)       ->  C(K x L)        (degree +1 homotopy)

phi comes in two forms: the classical recursion through the derivation
("prime") operation on simplicial operators, and a closed summation over
interval partitions.  The recursion fixes every sign; the closed form
carries the matching explicit sign and the two are compared term by term
in the tests.  Operators are represented as weakly increasing vertex
maps, which makes priming and composition trivial to normalize.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .chains import (
    Chain,
    LinearMap,
    SimplicialChains,
    Tensor,
    TensorComplex,
    _acc,
    apply_tensor_maps,
)
from .simplicial import product

__all__ = [
    "shuffles",
    "shuffle",
    "aw",
    "ez_homotopy_recursive",
    "ez_homotopy_closed",
    "EilenbergZilber",
    "SdrData",
    "sdr_adjust",
]


def shuffles(p, q):
    """Yield (mu, nu, sign) over all (p,q)-shuffles.

    mu lists the degeneracy indices applied to the second coordinate
    (|mu| = p), nu the complementary ones applied to the first
    (|nu| = q); sign is the signature of the shuffle permutation.
    """
    universe = range(p + q)
    for mu in combinations(universe, p):
        nu = tuple(i for i in universe if i not in mu)
        exp = sum(m - i for i, m in enumerate(mu))
        yield mu, nu, (-1) ** (exp % 2)


# -- simplicial operators as monotone vertex maps ----------------------------


def _op_apply(space, x, values):
    """Apply the operator with vertex map ``values`` to the simplex x."""
    image = sorted(set(values))
    res = space.subface(x, image)
    rank = {v: i for i, v in enumerate(image)}
    positions = [i for i in range(len(values) - 1) if values[i] == values[i + 1]]
    for i in positions:  # ascending: each index is valid when applied
        res = space.degeneracy(i, res)
    return res


def _op_prime(values):
    """The derivation operation: shift every face/degeneracy index by one."""
    return (0,) + tuple(v + 1 for v in values)


def _op_compose(inner, outer):
    """Vertex map of (x . inner) . outer, i.e. outer applied after inner."""
    return tuple(inner[v] for v in outer)


def _surjection(n_out, repeats, offset=0):
    """Vertex map [n] -> [...] with repeats at the given positions."""
    vals = [offset]
    for i in range(n_out):
        vals.append(vals[-1] + (0 if i in repeats else 1))
    return tuple(vals)


@lru_cache(maxsize=None)
def _g_ops(n):
    """Operator pairs of shuffle(aw) in dimension n: [(sign, opx, opy)]."""
    out = []
    for split in range(n + 1):
        for mu, nu, sign in shuffles(split, n - split):
            opx = _surjection(n, set(nu))          # front face then s_nu
            opy = _surjection(n, set(mu), split)   # back face then s_mu
            out.append((sign, opx, opy))
    return tuple(out)


@lru_cache(maxsize=None)
def _phi_ops(n):
    """Operator pairs of the homotopy in dimension n, by the recursion

        phi_n = (shuffle aw)' s_0 - (phi_{n-1})',

    equivalently phi_n = sum_m (-1)^m (shuffle aw)^{(m+1)} s_m.  The two
    signs are forced by requiring d phi + phi d = shuffle aw - 1 exactly
    (the identity itself is the sign oracle; other normalizations of the
    same display satisfy the negated identity instead).
    """
    if n <= 0:
        return ()
    s0 = _surjection(n + 1, {0})  # [n+1] -> [n]
    out = []
    for sign, opx, opy in _g_ops(n):
        out.append((sign,
                    _op_compose(s0, _op_prime(opx)),
                    _op_compose(s0, _op_prime(opy))))
    for sign, opx, opy in _phi_ops(n - 1):
        out.append((-sign, _op_prime(opx), _op_prime(opy)))
    return tuple(out)


# -- the SDR bundle ----------------------------------------------------------


class EilenbergZilber:
    """The E-Z strong deformation retract for a pair of simplicial sets.

    Materializes K x L up to ``top`` and exposes shuffle / aw / phi both
    per generator and as LinearMaps.  Homotopy values are stored in a
    table so that a mutated copy (one sign flipped) can be produced for
    sensitivity tests.
    """

    def __init__(self, K, L, top=None):
        self.K = K
        self.L = L
        self.P = product(K, L, top)
        self.CK = SimplicialChains(K)
        self.CL = SimplicialChains(L)
        self.X = TensorComplex(self.CK, self.CL)
        self.Y = SimplicialChains(self.P)
        self._nabla_table = {}
        self._f_table = {}
        self._phi_table = {}

    # shuffle map ------------------------------------------------------------

    def nabla_basis(self, t):
        got = self._nabla_table.get(t)
        if got is None:
            x, y = t.factors
            acc = {}
            for mu, nu, sign in shuffles(x.dim, y.dim):
                pair = self.P.from_pair(
                    self.K.apply_degeneracies(self.K.simplex(x), nu),
                    self.L.apply_degeneracies(self.L.simplex(y), mu),
                )
                if not pair.word:
                    _acc(acc, pair.gen, sign)
            got = Chain.from_acc(acc)
            self._nabla_table[t] = got
        return got

    # Alexander-Whitney map ----------------------------------------------------

    def f_basis(self, g):
        got = self._f_table.get(g)
        if got is None:
            a, b = self.P.pair_of[g]
            n = g.dim
            acc = {}
            for split in range(n + 1):
                front = self.K.subface(a, range(split + 1))
                if front.word:
                    continue
                back = self.L.subface(b, range(split, n + 1))
                if back.word:
                    continue
                _acc(acc, Tensor((front.gen, back.gen)), 1)
            got = Chain.from_acc(acc)
            self._f_table[g] = got
        return got

    # homotopy -----------------------------------------------------------------

    def _phi_pairs(self, g):
        a, b = self.P.pair_of[g]
        for sign, opx, opy in _phi_ops(g.dim):
            yield sign, _op_apply(self.K, a, opx), _op_apply(self.L, b, opy)

    def phi_basis(self, g):
        got = self._phi_table.get(g)
        if got is None:
            acc = {}
            for sign, xa, ya in self._phi_pairs(g):
                pair = self.P.from_pair(xa, ya)
                if not pair.word:
                    _acc(acc, pair.gen, sign)
            got = Chain.from_acc(acc)
            self._phi_table[g] = got
        return got

    def phi_closed_basis(self, g):
        """Closed-form homotopy: one term per (m, r, A, B) partition."""
        a, b = self.P.pair_of[g]
        n = g.dim
        acc = {}
        for m in range(n):
            front = self.K.subface(a, range(m + 1))
            for r in range(m + 1, n + 1):
                xfront = self.K.subface(a, range(r + 1))
                yface = self.L.subface(b, list(range(m + 1)) + list(range(r, n + 1)))
                interval = range(m + 1, n + 1)
                for B in combinations(interval, r - m):
                    A = [j for j in interval if j not in B]
                    xa = self.K.apply_degeneracies(xfront, [m] + A)
                    ya = self.L.apply_degeneracies(yface, B)
                    pair = self.P.from_pair(xa, ya)
                    if pair.word:
                        continue
                    exp = m + sum(B) - len(B) * m - (len(B) * (len(B) + 1)) // 2
                    _acc(acc, pair.gen, (-1) ** (exp % 2))
        return Chain.from_acc(acc)

    # linear maps ---------------------------------------------------------------

    @property
    def nabla(self):
        return LinearMap(self.nabla_basis, 0, self.X, self.Y, name="shuffle")

    @property
    def f(self):
        return LinearMap(self.f_basis, 0, self.Y, self.X, name="aw")

    @property
    def phi(self):
        return LinearMap(self.phi_basis, 1, self.Y, self.Y, name="phi")

    @property
    def phi_closed(self):
        return LinearMap(self.phi_closed_basis, 1, self.Y, self.Y,
                         name="phi_closed")

    def sdr(self):
        return SdrData(self.X, self.Y, self.nabla, self.f, self.phi)

    # mutation support ------------------------------------------------------------

    def force_phi(self, bound):
        for n in range(bound + 1):
            for g in self.P.gens(n):
                self.phi_basis(g)
        return self

    def flip_phi_sign(self, g, basis_elt):
        """A copy of this SDR whose stored phi(g) has one coefficient negated."""
        clone = EilenbergZilber.__new__(EilenbergZilber)
        clone.K, clone.L, clone.P = self.K, self.L, self.P
        clone.CK, clone.CL, clone.X, clone.Y = self.CK, self.CL, self.X, self.Y
        clone._nabla_table = self._nabla_table
        clone._f_table = self._f_table
        clone._phi_table = dict(self._phi_table)
        old = clone._phi_table[g]
        coeff = old.coefficient(basis_elt)
        if not coeff:
            raise ValueError("basis element does not occur in phi")
        terms = dict(old.terms)
        terms[basis_elt] = -coeff
        clone._phi_table[g] = Chain(terms)
        return clone


# -- module-level wrappers matching the operation signatures ------------------


def shuffle(ez, x, y):
    """shuffle(x (x) y) as a chain on C(K x L); x, y nondegenerate Simplexes."""
    return ez.nabla_basis(Tensor((x.gen, y.gen)))


def aw(ez, g):
    """Alexander-Whitney image of a product generator."""
    return ez.f_basis(g)


def ez_homotopy_recursive(ez, g):
    return ez.phi_basis(g)


def ez_homotopy_closed(ez, g):
    return ez.phi_closed_basis(g)


# -- generic SDR data ----------------------------------------------------------


class SdrData:
    """A strong deformation retract X <-> Y with homotopy phi on Y."""

    def __init__(self, X, Y, nabla, f, phi):
        self.X = X
        self.Y = Y
        self.nabla = nabla
        self.f = f
        self.phi = phi

    def check(self, bound):
        """Witness strings for any failed SDR identity through ``bound``."""
        bad = []
        for n in range(bound + 1):
            for t in self.X.basis(n):
                img = self.nabla.on_basis(t)
                if self.f(img) != Chain.of(t):
                    bad.append(f"f(shuffle({t!r})) != {t!r}")
                if self.phi(img):
                    bad.append(f"phi(shuffle({t!r})) != 0")
            for g in self.Y.basis(n):
                lhs = self.Y.d(self.phi.on_basis(g))
                if n >= 1:
                    lhs = lhs + self.phi(self.Y.d_basis(g))
                rhs = self.nabla(self.f.on_basis(g)) - Chain.of(g)
                if lhs != rhs:
                    bad.append(f"d phi + phi d != shuffle aw - 1 on {g!r}")
                if self.f(self.phi.on_basis(g)):
                    bad.append(f"aw(phi({g!r})) != 0")
                if self.phi(self.phi.on_basis(g)):
                    bad.append(f"phi^2({g!r}) != 0")
        return bad

    def check_section_coalgebra(self, bound):
        """Witnesses where the section fails to be a coalgebra map."""
        bad = []
        X, Y = self.X, self.Y
        nab = (self.nabla.on_basis, 0)
        for n in range(bound + 1):
            for t in X.basis(n):
                left = self.nabla.on_basis(t).map_basis(Y.coproduct_basis)
                right = apply_tensor_maps([nab, nab], X.coproduct_basis(t))
                if left != right:
                    bad.append(f"shuffle not a coalgebra map on {t!r}")
        return bad


def sdr_adjust(Y, nabla, f, phi_prime, check_bound=None):
    """Repair a homotopy satisfying only the retract condition.

    Given d phi' + phi' d = nabla f - 1, returns a homotopy satisfying
    all four SDR conditions.  The composite (e phi' e) d (e phi' e)
    with e = nabla f - 1 needs a global minus sign to land back on
    nabla f - 1; with it, all four conditions hold (phi^2 = 0 follows
    from e^2 = -e).  If ``check_bound`` is given, the input condition is
    verified first and a violation is rejected with a diagnostic.
    """
    e = nabla.compose(f) - LinearMap.identity(Y)
    if check_bound is not None:
        for n in range(check_bound + 1):
            for g in Y.basis(n):
                lhs = Y.d(phi_prime.on_basis(g)) + phi_prime(Y.d_basis(g))
                if lhs != e.on_basis(g):
                    raise ValueError(
                        f"input homotopy fails d phi + phi d = nabla f - 1 on {g!r}"
                    )
    half = e.compose(phi_prime).compose(e)
    return half.compose(Y.d).compose(half).scale(-1)
