"""Normalized integral chain complexes and linear algebra over them.

Chains are finite integer combinations of basis elements; degenerate
simplices are dropped at construction time so chain equality is dict
equality.  Basis elements carry a structural ``degree`` attribute:
GeneratorId (simplicial basis), Tensor (ordered factors) and, in other
modules, cobar words and wedge letters.  Tensor products use the Koszul
sign convention throughout:

    d(a (x) b)       = da (x) b + (-1)^|a| a (x) db
    (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b)
    sw(a (x) b)      = (-1)^{|a||b|} b (x) a
"""

from __future__ import annotations

from itertools import product as iproduct

from .simplicial import Simplex

__all__ = [
    "Chain",
    "Tensor",
    "LinearMap",
    "ChainComplex",
    "SimplicialChains",
    "TensorComplex",
    "chain_of_simplex",
    "boundary",
    "coproduct",
    "reduced_coproduct",
    "induced_chain_map",
    "tensor_differential",
    "apply_tensor_maps",
    "swap_factors",
    "chain_to_json",
    "basis_to_json",
]


class Tensor:
    """An ordered tensor-product basis element."""

    __slots__ = ("factors", "degree", "_hash")

    def __init__(self, factors):
        self.factors = tuple(factors)
        self.degree = sum(f.degree for f in self.factors)
        self._hash = hash((Tensor, self.factors))

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Tensor and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return "(" + " % ".join(repr(f) for f in self.factors) + ")"


class Chain:
    """A finite integer combination of basis elements (no zero terms)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {b: c for b, c in terms.items() if c}
        else:
            acc = {}
            for b, c in terms:
                c = acc.get(b, 0) + c
                if c:
                    acc[b] = c
                else:
                    acc.pop(b, None)
            self.terms = acc

    @staticmethod
    def zero():
        return _ZERO

    @staticmethod
    def of(b, coeff=1):
        return Chain({b: coeff}) if coeff else _ZERO

    @staticmethod
    def from_acc(acc):
        """Wrap an accumulator dict, dropping zeros (takes ownership)."""
        for b in [b for b, c in acc.items() if not c]:
            del acc[b]
        ch = Chain.__new__(Chain)
        ch.terms = acc
        return ch

    def items(self):
        return self.terms.items()

    def coefficient(self, b):
        return self.terms.get(b, 0)

    def degrees(self):
        return sorted({b.degree for b in self.terms})

    def __add__(self, other):
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _acc(acc, b, c)
        return Chain.from_acc(acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        for b, c in other.terms.items():
            _acc(acc, b, -c)
        return Chain.from_acc(acc)

    def __neg__(self):
        return Chain({b: -c for b, c in self.terms.items()})

    def scale(self, k):
        if k == 0:
            return _ZERO
        if k == 1:
            return self
        return Chain({b: k * c for b, c in self.terms.items()})

    __rmul__ = scale

    def map_basis(self, fn):
        """Linear extension of basis -> Chain."""
        acc = {}
        for b, c in self.terms.items():
            for b2, c2 in fn(b).items():
                _acc(acc, b2, c * c2)
        return Chain.from_acc(acc)

    def __eq__(self, other):
        return type(other) is Chain and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for b, c in self.terms.items():
            if c == 1:
                bits.append(f"+{b!r}")
            elif c == -1:
                bits.append(f"-{b!r}")
            else:
                bits.append(f"{c:+d}*{b!r}")
        return " ".join(bits)


_ZERO = Chain({})


def _acc(acc, b, c):
    v = acc.get(b, 0) + c
    if v:
        acc[b] = v
    else:
        acc.pop(b, None)


def chain_of_simplex(s):
    """Normalized chain class of a simplex: its generator, or 0 if degenerate."""
    if isinstance(s, Simplex):
        return _ZERO if s.word else Chain.of(s.gen)
    return Chain.of(s)


class LinearMap:
    """A degree-homogeneous linear map given on basis elements (memoized)."""

    def __init__(self, fn, deg=0, source=None, target=None, name=""):
        self._fn = fn
        self.deg = deg
        self.source = source
        self.target = target
        self.name = name
        self._memo = {}

    @staticmethod
    def from_table(table, deg=0, source=None, target=None, name=""):
        def fn(b):
            return table.get(b, _ZERO)
        return LinearMap(fn, deg, source, target, name)

    @staticmethod
    def identity(cplx=None, name="id"):
        return LinearMap(lambda b: Chain.of(b), 0, cplx, cplx, name)

    def on_basis(self, b):
        r = self._memo.get(b)
        if r is None:
            r = self._fn(b)
            self._memo[b] = r
        return r

    def __call__(self, x):
        if isinstance(x, Chain):
            return x.map_basis(self.on_basis)
        return self.on_basis(x)

    def compose(self, inner):
        """self after inner."""
        return LinearMap(
            lambda b: inner.on_basis(b).map_basis(self.on_basis),
            self.deg + inner.deg,
            inner.source,
            self.target,
            name=f"{self.name}*{inner.name}",
        )

    def __add__(self, other):
        if self.deg != other.deg:
            raise ValueError("can only add maps of equal degree")
        return LinearMap(
            lambda b: self.on_basis(b) + other.on_basis(b),
            self.deg, self.source, self.target,
            name=f"{self.name}+{other.name}",
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        return LinearMap(lambda b: self.on_basis(b).scale(k),
                         self.deg, self.source, self.target,
                         name=f"{k}*{self.name}")


class ChainComplex:
    """Base class: ``basis(n)`` enumeration plus a differential."""

    name = ""
    top_degree = None  # largest degree that can carry a basis element

    def basis(self, n):
        raise NotImplementedError

    def d_basis(self, b):
        raise NotImplementedError

    @property
    def d(self):
        m = getattr(self, "_d_map", None)
        if m is None:
            m = LinearMap(self.d_basis, -1, self, self, name="d")
            self._d_map = m
        return m

    def diff(self, chain):
        return self.d(chain)

    def is_connected(self):
        return len(self.basis(0)) == 1

    def is_simply_connected(self):
        return self.is_connected() and not self.basis(1)

    def min_positive_degree(self):
        top = self.top_degree
        n = 1
        while top is None or n <= top:
            if self.basis(n):
                return n
            n += 1
            if top is None and n > 64:
                raise ValueError("no positive-degree basis found")
        return None

    def matrix(self, n):
        """The matrix of d: C_n -> C_{n-1} over the enumerated bases."""
        cols = self.basis(n)
        rows = self.basis(n - 1) if n >= 1 else ()
        index = {b: i for i, b in enumerate(rows)}
        mat = [[0] * len(cols) for _ in rows]
        for j, b in enumerate(cols):
            for b2, c in self.d_basis(b).items():
                mat[index[b2]][j] = c
        return mat

    def check_d_squared(self, bound):
        """Witnesses (basis, chain) where d(d(b)) != 0, degrees <= bound."""
        bad = []
        for n in range(2, bound + 1):
            for b in self.basis(n):
                r = self.d(self.d_basis(b))
                if r:
                    bad.append((b, r))
        return bad


class SimplicialChains(ChainComplex):
    """Normalized chains C(K) with the front/back-face coproduct."""

    def __init__(self, K):
        self.space = K
        self.name = f"C({K.name})"
        self.top_degree = K.top_dim

    def basis(self, n):
        return self.space.gens(n)

    def d_basis(self, g):
        if g.dim == 0:
            return _ZERO
        K = self.space
        acc = {}
        sign = 1
        for f in K.faces[g]:
            if not f.word:
                _acc(acc, f.gen, sign)
            sign = -sign
        return Chain.from_acc(acc)

    def counit(self, b):
        return 1 if b.degree == 0 else 0

    def coproduct_basis(self, g):
        """Full coproduct: sum of front-face (x) back-face splittings."""
        K = self.space
        n = g.dim
        x = K.simplex(g)
        acc = {}
        for split in range(n + 1):
            front = K.subface(x, range(split + 1))
            if front.word:
                continue
            back = K.subface(x, range(split, n + 1))
            if back.word:
                continue
            _acc(acc, Tensor((front.gen, back.gen)), 1)
        return Chain.from_acc(acc)

    def reduced_coproduct_basis(self, g):
        full = self.coproduct_basis(g)
        return Chain({t: c for t, c in full.items()
                      if t.factors[0].degree and t.factors[1].degree})


class TensorComplex(ChainComplex):
    """Tensor product of chain complexes, Koszul differential."""

    def __init__(self, *factors):
        self.factors = factors
        self.name = "(x)".join(f.name for f in factors)
        tops = [f.top_degree for f in factors]
        self.top_degree = None if None in tops else sum(tops)
        self._basis_memo = {}

    def basis(self, n):
        got = self._basis_memo.get(n)
        if got is None:
            got = tuple(
                Tensor(parts)
                for parts in self._enumerate(0, n)
            )
            self._basis_memo[n] = got
        return got

    def _enumerate(self, i, n):
        if i == len(self.factors) - 1:
            for b in self.factors[i].basis(n):
                yield (b,)
            return
        top = self.factors[i].top_degree
        hi = n if top is None else min(n, top)
        for d in range(hi + 1):
            heads = self.factors[i].basis(d)
            if not heads:
                continue
            for tail in self._enumerate(i + 1, n - d):
                for b in heads:
                    yield (b,) + tail

    def d_basis(self, t):
        acc = {}
        sign = 1
        fs = t.factors
        for i, b in enumerate(fs):
            for b2, c in self.factors[i].d_basis(b).items():
                _acc(acc, Tensor(fs[:i] + (b2,) + fs[i + 1:]), sign * c)
            sign = sign if b.degree % 2 == 0 else -sign
        return Chain.from_acc(acc)

    def counit(self, t):
        out = 1
        for f, b in zip(self.factors, t.factors):
            out *= f.counit(b)
        return out

    def coproduct_basis(self, t):
        """Coproduct of a 2-factor tensor coalgebra, with the switch sign."""
        if len(self.factors) != 2:
            raise ValueError("coproduct implemented for two factors")
        A, B = self.factors
        a, b = t.factors
        acc = {}
        for ta, ca in A.coproduct_basis(a).items():
            a1, a2 = ta.factors
            for tb, cb in B.coproduct_basis(b).items():
                b1, b2 = tb.factors
                sign = -1 if (a2.degree * b1.degree) % 2 else 1
                _acc(acc, Tensor((Tensor((a1, b1)), Tensor((a2, b2)))),
                     sign * ca * cb)
        return Chain.from_acc(acc)

    def reduced_coproduct_basis(self, t):
        full = self.coproduct_basis(t)
        return Chain({u: c for u, c in full.items()
                      if u.factors[0].degree and u.factors[1].degree})


# -- module-level operations -------------------------------------------------


def boundary(K, chain):
    """Alternating-sum differential of a chain on C(K)."""
    return SimplicialChains(K).d(chain)


def coproduct(K, chain):
    C = SimplicialChains(K)
    if isinstance(chain, Chain):
        return chain.map_basis(C.coproduct_basis)
    return C.coproduct_basis(chain)


def reduced_coproduct(K, chain):
    C = SimplicialChains(K)
    if isinstance(chain, Chain):
        return chain.map_basis(C.reduced_coproduct_basis)
    return C.reduced_coproduct_basis(chain)


def induced_chain_map(h):
    """The chain map C(source) -> C(target) of a simplicial map."""
    src = SimplicialChains(h.source)
    tgt = SimplicialChains(h.target)

    def fn(g):
        return chain_of_simplex(h(h.source.simplex(g)))

    return LinearMap(fn, 0, src, tgt, name=h.name or "h#")


def tensor_differential(T, element):
    """Koszul differential of a (chain on a) TensorComplex."""
    if isinstance(element, Chain):
        return T.d(element)
    return T.d_basis(element)


def apply_tensor_maps(maps, chain):
    """Apply f_1 (x) ... (x) f_k to a chain of k-fold tensors.

    ``maps`` is a sequence of (on_basis, degree) pairs; each on_basis
    returns a Chain whose basis elements are Tensors (their factors are
    concatenated in order) or plain basis elements.  Koszul sign:
    (-1)^{sum_{u<t} deg_t * |x_u|}.
    """
    k = len(maps)
    acc = {}
    for t, c in chain.items():
        xs = t.factors
        # Koszul exponent: sum over t of deg_t * (|x_1|+...+|x_{t-1}|)
        exp = 0
        pre = 0
        for u in range(k):
            exp += maps[u][1] * pre
            pre += xs[u].degree
        parts = [maps[u][0](xs[u]) for u in range(k)]
        if not all(parts):
            continue
        sign = -1 if exp % 2 else 1
        for combo in iproduct(*(p.items() for p in parts)):
            coeff = sign * c
            factors = ()
            for b, cb in combo:
                coeff *= cb
                factors += b.factors if isinstance(b, Tensor) else (b,)
            _acc(acc, Tensor(factors), coeff)
    return Chain.from_acc(acc)


def swap_factors(chain):
    """The tensor switch on chains of 2-fold Tensors, with Koszul sign."""
    acc = {}
    for t, c in chain.items():
        a, b = t.factors
        sign = -1 if (a.degree * b.degree) % 2 else 1
        _acc(acc, Tensor((b, a)), sign * c)
    return Chain.from_acc(acc)


# -- JSON interchange ---------------------------------------------------------


def basis_to_json(b):
    if isinstance(b, Tensor):
        return {"tensor": [basis_to_json(f) for f in b.factors]}
    if hasattr(b, "letters"):  # cobar word, kept here to nest uniformly
        return {"word": [basis_to_json(c) for c in b.letters]}
    if hasattr(b, "side"):  # wedge letter
        return {"side": b.side, "of": basis_to_json(b.elem)}
    if hasattr(b, "dim"):
        return {"dim": b.dim, "index": b.index, "label": b.label}
    return {"unit": True}


def chain_to_json(chain):
    return [
        {"basis": basis_to_json(b), "coefficient": c}
        for b, c in sorted(chain.items(), key=lambda bc: repr(bc[0]))
    ]
