"""The cobar construction, Milgram's map, and twisting cochains.

Words of the cobar construction are flat tuples of desuspended
positive-degree coalgebra basis elements; multiplication is
concatenation.  The differential on a generator is

    d(s-1 c) = -s-1(dc) + sum (-1)^{|c'|} (s-1 c')(s-1 c'')

over the reduced coproduct, extended as a derivation with Koszul signs.
Desuspension of a k-fold tensor uses the sign (-1)^{sum_u (k-u)|c_u|};
``desuspend``/``suspend`` below are exact mutual inverses for that
convention and every other module goes through them.
"""

from __future__ import annotations

from .chains import Chain, LinearMap, Tensor, TensorComplex, ChainComplex, _acc

__all__ = [
    "Word",
    "CobarAlgebra",
    "TensorAlgebra",
    "AlgebraMap",
    "cobar_map",
    "milgram_q",
    "desuspend",
    "suspend_word",
    "TwistingCochain",
    "canonical_twisting_cochain",
    "cartesian_product",
    "TwistedComplex",
]


class Word:
    """A product of desuspended coalgebra elements; () is the unit."""

    __slots__ = ("letters", "degree", "_hash")

    def __init__(self, letters):
        self.letters = tuple(letters)
        self.degree = sum(c.degree - 1 for c in self.letters)
        self._hash = hash((Word, self.letters))

    def __eq__(self, other):
        if self is other:
            return True
        return type(other) is Word and self.letters == other.letters

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __repr__(self):
        if not self.letters:
            return "1"
        return "".join(f"[{c!r}]" for c in self.letters)


def desuspend(chain, k):
    """Letterwise desuspension of a chain of k-fold tensors into words.

    Terms with a factor of degree < 1 die (there is nothing of negative
    degree in the free algebra).  For k = 1 the chain may be over plain
    basis elements.
    """
    acc = {}
    for t, c in chain.items():
        factors = t.factors if isinstance(t, Tensor) else (t,)
        if len(factors) != k:
            raise ValueError(f"expected {k} factors, found {len(factors)}")
        if any(f.degree < 1 for f in factors):
            continue
        exp = sum((k - u - 1) * f.degree for u, f in enumerate(factors))
        _acc(acc, Word(factors), c * (-1) ** (exp % 2))
    return Chain.from_acc(acc)


def suspend_word(w):
    """(sign, Tensor) with desuspend(sign * Tensor) = w; inverse of desuspend."""
    k = len(w.letters)
    exp = sum((k - u - 1) * f.degree for u, f in enumerate(w.letters))
    return (-1) ** (exp % 2), Tensor(w.letters)


class CobarAlgebra(ChainComplex):
    """The cobar construction on a simply-connected chain coalgebra."""

    def __init__(self, C, name=""):
        if not C.is_connected():
            raise ValueError(f"{C.name} is not connected; cobar undefined")
        if C.basis(1):
            raise ValueError(
                f"{C.name} is not simply connected; cobar would have "
                "degree-0 generators"
            )
        self.C = C
        self.name = name or f"Omega({C.name})"
        ctop = C.top_degree
        self.top_degree = None  # free algebra: words of every degree
        self._letter_top = None if ctop is None else ctop - 1
        self._basis_memo = {}
        self._d_letter_memo = {}

    def letters(self, d):
        """Generators of degree d: coalgebra basis of degree d + 1."""
        return self.C.basis(d + 1) if d >= 1 else ()

    def basis(self, n):
        got = self._basis_memo.get(n)
        if got is not None:
            return got
        if n == 0:
            out = (Word(()),)
        elif n < 0:
            out = ()
        else:
            items = []
            hi = n if self._letter_top is None else min(n, self._letter_top)
            for d in range(1, hi + 1):
                for c in self.letters(d):
                    for rest in self.basis(n - d):
                        items.append(Word((c,) + rest.letters))
            out = tuple(items)
        self._basis_memo[n] = out
        return out

    def d_letter(self, c):
        got = self._d_letter_memo.get(c)
        if got is None:
            got = desuspend(self.C.d_basis(c), 1).scale(-1) + desuspend(
                self.C.reduced_coproduct_basis(c), 2
            )
            self._d_letter_memo[c] = got
        return got

    def d_basis(self, w):
        acc = {}
        pre = 0
        letters = w.letters
        for i, c in enumerate(letters):
            sign = (-1) ** (pre % 2)
            for dw, k in self.d_letter(c).items():
                _acc(acc, Word(letters[:i] + dw.letters + letters[i + 1:]),
                     sign * k)
            pre += c.degree - 1
        return Chain.from_acc(acc)

    # algebra structure

    def one(self):
        return Chain.of(Word(()))

    def mul(self, u, v):
        acc = {}
        for wu, cu in u.items():
            for wv, cv in v.items():
                _acc(acc, wu * wv, cu * cv)
        return Chain.from_acc(acc)


class TensorAlgebra(TensorComplex):
    """Tensor product of cobar algebras with the Koszul product."""

    def one(self):
        return Chain.of(Tensor(tuple(Word(()) for _ in self.factors)))

    def mul(self, u, v):
        acc = {}
        for tu, cu in u.items():
            us = tu.factors
            for tv, cv in v.items():
                vs = tv.factors
                exp = 0
                for i in range(len(us)):
                    for j in range(i + 1, len(us)):
                        exp += us[j].degree * vs[i].degree
                sign = (-1) ** (exp % 2)
                _acc(acc, Tensor(tuple(a * b for a, b in zip(us, vs))),
                     sign * cu * cv)
        return Chain.from_acc(acc)


class AlgebraMap:
    """An algebra map out of a free (cobar) algebra, given on letters."""

    def __init__(self, source, target, on_letter, name=""):
        self.source = source
        self.target = target
        self._on_letter = on_letter
        self.name = name
        self._letter_memo = {}
        self._word_memo = {}

    def letter(self, c):
        got = self._letter_memo.get(c)
        if got is None:
            got = self._on_letter(c)
            self._letter_memo[c] = got
        return got

    def word(self, w):
        got = self._word_memo.get(w)
        if got is None:
            got = self.target.one()
            for c in w.letters:
                got = self.target.mul(got, self.letter(c))
            self._word_memo[w] = got
        return got

    def __call__(self, x):
        if isinstance(x, Word):
            return self.word(x)
        return x.map_basis(self.word)

    def compose(self, inner):
        """self after inner (both algebra maps)."""
        return AlgebraMap(
            inner.source, self.target,
            lambda c: self(inner.letter(c)),
            name=f"{self.name}*{inner.name}",
        )

    def is_chain_map(self, bound):
        """Witnesses where d(target) fails to commute, on words <= bound."""
        bad = []
        for n in range(bound + 1):
            for w in self.source.basis(n):
                if self.target.d(self.word(w)) != self(self.source.d_basis(w)):
                    bad.append(w)
        return bad

    def is_multiplicative(self, pairs):
        bad = []
        for u, v in pairs:
            if self.word(u * v) != self.target.mul(self.word(u), self.word(v)):
                bad.append((u, v))
        return bad


def cobar_map(h, omega_source, omega_target, name=""):
    """The algebra map induced on cobar constructions by a coalgebra map."""
    return AlgebraMap(
        omega_source, omega_target,
        lambda c: desuspend(h.on_basis(c), 1),
        name=name or f"Omega({h.name})",
    )


def milgram_q(omega_pair, target):
    """The natural algebra map  Omega(C (x) C')  ->  Omega C (x) Omega C'.

    Letters x (x) 1 and 1 (x) y pass to the corresponding side; letters
    with both factors of positive degree die.
    """
    one = Word(())

    def on_letter(t):
        a, b = t.factors
        if b.degree == 0:
            return Chain.of(Tensor((Word((a,)), one)))
        if a.degree == 0:
            return Chain.of(Tensor((one, Word((b,)))))
        return Chain.zero()

    return AlgebraMap(omega_pair, target, on_letter, name="q")


# -- twisting cochains ---------------------------------------------------------


class TwistingCochain:
    """A degree -1 map C -> A stored on positive-degree basis elements."""

    def __init__(self, C, A, table, name="t"):
        self.C = C
        self.A = A
        self.table = dict(table)
        self.name = name

    def value(self, b):
        return self.table.get(b, Chain.zero())

    def __call__(self, x):
        if isinstance(x, Chain):
            return x.map_basis(self.value)
        return self.value(x)

    def check(self, bound):
        """Witnesses of dt + td != mu (t (x) t) coproduct, degrees <= bound."""
        bad = []
        for n in range(1, bound + 1):
            for b in self.C.basis(n):
                lhs = self.A.d(self.value(b)) + self(self.C.d_basis(b))
                rhs = Chain.zero()
                for t2, c in self.C.coproduct_basis(b).items():
                    b1, b2 = t2.factors
                    va = self.value(b1)
                    vb = self.value(b2)
                    if va and vb:
                        sign = (-1) ** (b1.degree % 2)
                        rhs = rhs + self.A.mul(va, vb).scale(sign * c)
                if lhs != rhs:
                    bad.append(b)
        return bad

    def algebra_map(self, omega):
        """The induced chain algebra map Omega C -> A."""
        return AlgebraMap(omega, self.A, self.value, name=f"theta({self.name})")

    def twisted_complex(self):
        return TwistedComplex(self.A, self.C, self)


def canonical_twisting_cochain(C, omega):
    """c -> s-1 c, the universal twisting cochain into the cobar construction."""
    table = {}
    top = C.top_degree
    n = 1
    while top is None or n <= top:
        basis = C.basis(n)
        if top is None and not basis and n > 1:
            break
        for b in basis:
            table[b] = Chain.of(Word((b,)))
        n += 1
    return TwistingCochain(C, omega, table, name="t_cobar")


def cartesian_product(t, t2, CC, AA):
    """t * t' = t (x) unit counit + unit counit (x) t' on a tensor coalgebra."""
    table = {}
    n = 1
    top = CC.top_degree
    while top is None or n <= top:
        basis = CC.basis(n)
        if top is None and not basis and n > 1:
            break
        for tb in basis:
            a, b = tb.factors
            if b.degree == 0:
                va = t.value(a)
                if va:
                    table[tb] = Chain(
                        {Tensor((w, Word(()))): c for w, c in va.items()}
                    )
            elif a.degree == 0:
                vb = t2.value(b)
                if vb:
                    table[tb] = Chain(
                        {Tensor((Word(()), w)): c for w, c in vb.items()}
                    )
        n += 1
    return TwistingCochain(CC, AA, table, name=f"{t.name}*{t2.name}")


class TwistedComplex(ChainComplex):
    """A (x) C with the differential twisted by a cochain t.

    D(a (x) c) = da (x) c + (-1)^|a| a (x) dc
                 - (-1)^|a| sum a.t(c') (x) c''   over the coproduct of c.
    """

    def __init__(self, A, C, t):
        self.A = A
        self.C = C
        self.t = t
        self.name = f"{A.name}(x)_t {C.name}"
        atop, ctop = A.top_degree, C.top_degree
        self.top_degree = None if None in (atop, ctop) else atop + ctop
        self._basis_memo = {}

    def basis(self, n):
        got = self._basis_memo.get(n)
        if got is None:
            items = []
            for k in range(n + 1):
                for a in self.A.basis(k):
                    for c in self.C.basis(n - k):
                        items.append(Tensor((a, c)))
            got = tuple(items)
            self._basis_memo[n] = got
        return got

    def d_basis(self, tb):
        a, c = tb.factors
        sign = (-1) ** (a.degree % 2)
        acc = {}
        for a2, k in self.A.d_basis(a).items():
            _acc(acc, Tensor((a2, c)), k)
        for c2, k in self.C.d_basis(c).items():
            _acc(acc, Tensor((a, c2)), sign * k)
        for t2, k in self.C.coproduct_basis(c).items():
            c1, c2 = t2.factors
            tv = self.t.value(c1)
            if not tv:
                continue
            prod = self.A.mul(Chain.of(a), tv)
            for a2, k2 in prod.items():
                _acc(acc, Tensor((a2, c2)), -sign * k * k2)
        return Chain.from_acc(acc)
