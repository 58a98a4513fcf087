"""Finite simplicial sets with exact face/degeneracy arithmetic.

Every simplex is kept in Eilenberg-Zilber canonical form: a strictly
decreasing word of degeneracy indices applied to a nondegenerate
generator.  Canonical forms make equality decidable, so chains over the
integers can be compared exactly.  All constructors here (standard
simplices, skeletal quotients, binary products) materialize finitely
many generators per dimension together with their face tables.
"""

from __future__ import annotations

import json
from itertools import combinations

__all__ = [
    "GeneratorId",
    "Simplex",
    "SimplicialSet",
    "SimplicialMap",
    "ProductSet",
    "standard_simplex",
    "point",
    "skeletal_quotient",
    "quotient_map",
    "sphere",
    "product",
    "product_map",
    "diagonal_map",
    "swap_map",
    "simplicial_set_to_json",
    "simplicial_set_from_json",
]


class GeneratorId:
    """A nondegenerate simplex, identified by (dimension, index).

    The label is display-only and never takes part in equality or
    hashing.
    """

    __slots__ = ("dim", "index", "label", "_hash")

    def __init__(self, dim, index, label=""):
        self.dim = dim
        self.index = index
        self.label = label if label else f"{dim}.{index}"
        self._hash = hash((GeneratorId, dim, index))

    @property
    def degree(self):
        return self.dim

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is GeneratorId
            and self.dim == other.dim
            and self.index == other.index
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.label


class Simplex:
    """A possibly-degenerate simplex ``s_{j1}...s_{jt} g`` in canonical form."""

    __slots__ = ("word", "gen", "dim", "_hash")

    def __init__(self, word, gen):
        word = tuple(word)
        # canonical form: strictly decreasing, every index applicable
        for a, b in zip(word, word[1:]):
            if a <= b:
                raise ValueError(f"degeneracy word {word} is not strictly decreasing")
        d = gen.dim
        for r, j in enumerate(reversed(word)):
            if j > d + r:
                raise ValueError(f"degeneracy index {j} exceeds dimension {d + r}")
        self.word = word
        self.gen = gen
        self.dim = d + len(word)
        self._hash = hash((Simplex, word, gen))

    @property
    def is_degenerate(self):
        return bool(self.word)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Simplex
            and self.word == other.word
            and self.gen == other.gen
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.word:
            return self.gen.label
        ops = "".join(f"s{j}" for j in self.word)
        return f"{ops}.{self.gen.label}"


class SimplicialSet:
    """A dimensionwise-finite simplicial set given by generators and faces.

    ``generators`` maps each dimension to a tuple of GeneratorId and
    ``faces`` maps each generator of dimension n >= 1 to its n+1 faces
    (Simplex values, canonical form).  Operations never mutate the set.
    """

    def __init__(self, name, generators, faces, validate=True):
        self.name = name
        self.generators = {n: tuple(gs) for n, gs in generators.items() if gs}
        self.faces = dict(faces)
        self.top_dim = max(self.generators) if self.generators else 0
        if validate:
            self.validate()

    # -- basic queries --------------------------------------------------

    def gens(self, n):
        return self.generators.get(n, ())

    def all_gens(self):
        for n in sorted(self.generators):
            yield from self.generators[n]

    def counts(self):
        return tuple(len(self.gens(n)) for n in range(self.top_dim + 1))

    def simplex(self, gen):
        return Simplex((), gen)

    def is_reduced(self, r):
        """Exactly one simplex in every dimension <= r."""
        if len(self.gens(0)) != 1:
            return False
        return all(not self.gens(n) for n in range(1, r + 1))

    def basepoint(self):
        return self.gens(0)[0]

    # -- operators -------------------------------------------------------

    def face(self, i, x):
        """Canonical form of the i-th face of x."""
        n = x.dim
        if n == 0:
            raise ValueError("a 0-simplex has no faces")
        if not 0 <= i <= n:
            raise IndexError(f"face index {i} out of range for dimension {n}")
        out = []
        word = x.word
        for pos, j in enumerate(word):
            if i == j or i == j + 1:
                return Simplex(out + list(word[pos + 1:]), x.gen)
            if i < j:
                out.append(j - 1)
            else:
                out.append(j)
                i -= 1
        res = self.faces[x.gen][i]
        for j in reversed(out):
            res = self.degeneracy(j, res)
        return res

    def degeneracy(self, i, x):
        """Canonical form of s_i x."""
        if not 0 <= i <= x.dim:
            raise IndexError(f"degeneracy index {i} out of range for dimension {x.dim}")
        word = x.word
        out = []
        for pos, j in enumerate(word):
            if i > j:
                return Simplex(out + [i] + list(word[pos:]), x.gen)
            out.append(j + 1)
        return Simplex(out + [i], x.gen)

    def subface(self, x, vertices):
        """The face of x spanned by the given vertex positions (ascending)."""
        keep = set(vertices)
        res = x
        for v in range(x.dim, -1, -1):
            if v not in keep:
                res = self.face(v, res)
        return res

    def apply_degeneracies(self, x, indices):
        """Apply s_i for i in ``indices`` (ascending application order)."""
        res = x
        for i in sorted(indices):
            res = self.degeneracy(i, res)
        return res

    # -- validation & io ---------------------------------------------------

    def validate(self):
        """Check the stored face tables against the simplicial identities."""
        for n, gs in self.generators.items():
            for idx, g in enumerate(gs):
                if g.dim != n:
                    raise ValueError(f"generator {g} listed in dimension {n}")
                if n == 0:
                    continue
                fs = self.faces.get(g)
                if fs is None or len(fs) != n + 1:
                    raise ValueError(f"generator {g} needs {n + 1} faces")
                for f in fs:
                    if f.dim != n - 1:
                        raise ValueError(f"face of {g} has dimension {f.dim}")
        for g in self.all_gens():
            if g.dim < 2:
                continue
            x = self.simplex(g)
            for j in range(1, g.dim + 1):
                for i in range(j):
                    left = self.face(i, self.face(j, x))
                    right = self.face(j - 1, self.face(i, x))
                    if left != right:
                        raise ValueError(
                            f"simplicial identity d{i} d{j} failed on {g}"
                        )
        return self


class SimplicialMap:
    """A simplicial map, stored by its values on generators."""

    def __init__(self, source, target, assignment, name="", validate=False):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        self.name = name
        if validate:
            self.validate()

    def __call__(self, x):
        y = self.assignment[x.gen]
        for j in reversed(x.word):
            y = self.target.degeneracy(j, y)
        return y

    def compose(self, other):
        """self after other."""
        assign = {g: self(other(other.source.simplex(g)))
                  for g in other.source.all_gens()}
        return SimplicialMap(other.source, self.target, assign,
                             name=f"{self.name}*{other.name}")

    def validate(self):
        for g in self.source.all_gens():
            img = self.assignment[g]
            if img.dim != g.dim:
                raise ValueError(f"map does not preserve dimension on {g}")
            if g.dim == 0:
                continue
            x = self.source.simplex(g)
            for i in range(g.dim + 1):
                if self(self.source.face(i, x)) != self.target.face(i, self(x)):
                    raise ValueError(f"map fails to commute with d{i} on {g}")
        return self

    @staticmethod
    def identity(K):
        return SimplicialMap(K, K, {g: K.simplex(g) for g in K.all_gens()},
                             name="id")


# -- standard constructions ------------------------------------------------


def standard_simplex(n):
    """The simplicial n-simplex: one generator per nonempty subset of [0,n]."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    by_dim = {}
    gen_of = {}
    for d in range(n + 1):
        gens = []
        for idx, verts in enumerate(combinations(range(n + 1), d + 1)):
            g = GeneratorId(d, idx, "".join(str(v) for v in verts))
            gens.append(g)
            gen_of[verts] = g
        by_dim[d] = gens
    faces = {}
    for verts, g in gen_of.items():
        if g.dim == 0:
            continue
        faces[g] = tuple(
            Simplex((), gen_of[verts[:i] + verts[i + 1:]])
            for i in range(len(verts))
        )
    return SimplicialSet(f"delta[{n}]", by_dim, faces)


def point():
    return standard_simplex(0)


def _collapsed(base, m):
    """The unique m-simplex over the basepoint."""
    return Simplex(tuple(range(m - 1, -1, -1)), base)


def skeletal_quotient(K, r):
    """Collapse the r-skeleton of K to a point."""
    if not 0 <= r < K.top_dim:
        raise ValueError(f"need 0 <= r < top dimension {K.top_dim}")
    base = GeneratorId(0, 0, "*")
    new_gen = {}
    by_dim = {0: [base]}
    for n in range(r + 1, K.top_dim + 1):
        gens = []
        for g in K.gens(n):
            ng = GeneratorId(n, g.index, g.label)
            new_gen[g] = ng
            gens.append(ng)
        if gens:
            by_dim[n] = gens

    def push(s):
        if s.gen.dim > r:
            return Simplex(s.word, new_gen[s.gen])
        if s.dim == 0:
            return Simplex((), base)
        return _collapsed(base, s.dim)

    faces = {}
    for g, ng in new_gen.items():
        faces[ng] = tuple(push(f) for f in K.faces[g])
    name = f"{K.name}/sk{r}"
    return SimplicialSet(name, by_dim, faces)


def quotient_map(K, r, Q=None):
    """The projection K -> K/(r-skeleton)."""
    Q = Q if Q is not None else skeletal_quotient(K, r)
    base = Q.basepoint()
    surviving = {}
    for n in range(r + 1, K.top_dim + 1):
        for g, ng in zip(K.gens(n), Q.gens(n)):
            surviving[g] = ng
    assign = {}
    for g in K.all_gens():
        if g.dim > r:
            assign[g] = Q.simplex(surviving[g])
        elif g.dim == 0:
            assign[g] = Q.simplex(base)
        else:
            assign[g] = _collapsed(base, g.dim)
    return SimplicialMap(K, Q, assign, name=f"collapse{r}")


def sphere(n):
    """The n-sphere as delta[n] with its boundary collapsed."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    S = skeletal_quotient(standard_simplex(n), n - 1)
    S.name = f"sphere[{n}]"
    return S


# -- products ----------------------------------------------------------------


class ProductSet(SimplicialSet):
    """K x L with nondegenerate simplices enumerated exactly.

    Nondegenerate n-simplices are the pairs (s_A x, s_B y) with
    A and B disjoint; ``pair_of`` recovers the coordinates of a
    generator and ``from_pair`` canonicalizes an arbitrary pair.
    """

    def __init__(self, K, L, top):
        self.factor_left = K
        self.factor_right = L
        self.pair_of = {}
        self._gen_index = {}
        by_dim = {}
        faces = {}
        for n in range(top + 1):
            gens = []
            idx = 0
            for p in range(n + 1):
                for x in K.gens(p):
                    a_size = n - p
                    for q in range(n + 1):
                        if (n - p) + (n - q) > n:
                            continue
                        for y in L.gens(q):
                            b_size = n - q
                            for A in combinations(range(n), a_size):
                                rest = [i for i in range(n) if i not in A]
                                for B in combinations(rest, b_size):
                                    a = Simplex(tuple(sorted(A, reverse=True)), x)
                                    b = Simplex(tuple(sorted(B, reverse=True)), y)
                                    g = GeneratorId(
                                        n, idx, f"({a!r}|{b!r})"
                                    )
                                    idx += 1
                                    gens.append(g)
                                    self.pair_of[g] = (a, b)
                                    self._gen_index[(a, b)] = g
            if gens:
                by_dim[n] = gens
            for g in gens:
                if n == 0:
                    continue
                a, b = self.pair_of[g]
                faces[g] = tuple(
                    self._canonical_pair(K.face(i, a), L.face(i, b))
                    for i in range(n + 1)
                )
        super().__init__(f"({K.name})x({L.name})", by_dim, faces, validate=False)

    def _canonical_pair(self, a, b):
        word = []
        wa = set(a.word)
        wb = set(b.word)
        while True:
            common = wa & wb
            if not common:
                break
            i = max(common)
            a = self.factor_left.face(i, a)
            b = self.factor_right.face(i, b)
            word.append(i)
            wa = set(a.word)
            wb = set(b.word)
        try:
            g = self._gen_index[(a, b)]
        except KeyError:
            raise ValueError(
                f"pair of dimension {a.dim} beyond materialized bound "
                f"{self.top_dim}"
            ) from None
        return Simplex(tuple(word), g)

    def from_pair(self, a, b):
        """Canonical Simplex of the product for coordinates (a, b)."""
        if a.dim != b.dim:
            raise ValueError("coordinates must share a dimension")
        return self._canonical_pair(a, b)

    def projection(self, side):
        factor = self.factor_left if side == 0 else self.factor_right
        assign = {g: self.pair_of[g][side] for g in self.all_gens()}
        return SimplicialMap(self, factor, assign, name=f"pr{side}")


def product(K, L, top=None):
    """The binary product, materialized up to dimension ``top``."""
    if top is None:
        top = K.top_dim + L.top_dim
    return ProductSet(K, L, top)


def product_map(h, k, P, Q):
    """h x k : P -> Q for product sets P, Q over the sources/targets."""
    assign = {}
    for g in P.all_gens():
        a, b = P.pair_of[g]
        assign[g] = Q.from_pair(h(a), k(b))
    return SimplicialMap(P, Q, assign, name=f"({h.name}x{k.name})")


def diagonal_map(K, P=None):
    """x -> (x, x) into a materialized product K x K."""
    P = P if P is not None else product(K, K, K.top_dim)
    assign = {}
    for g in K.all_gens():
        s = K.simplex(g)
        assign[g] = P.from_pair(s, s)
    return SimplicialMap(K, P, assign, name="diag")


def swap_map(P, Q=None):
    """(x, y) -> (y, x) between materialized products."""
    if Q is None:
        same = P.factor_left is P.factor_right
        Q = P if same else product(P.factor_right, P.factor_left, P.top_dim)
    assign = {}
    for g in P.all_gens():
        a, b = P.pair_of[g]
        assign[g] = Q.from_pair(b, a)
    return SimplicialMap(P, Q, assign, name="swap")


# -- JSON interchange --------------------------------------------------------


def simplicial_set_to_json(K):
    gens = [[g.label for g in K.gens(n)] for n in range(K.top_dim + 1)]
    faces = {}
    for g in K.all_gens():
        if g.dim == 0:
            continue
        faces[f"{g.dim}/{g.index}"] = [
            {"word": list(f.word), "dim": f.gen.dim, "index": f.gen.index}
            for f in K.faces[g]
        ]
    return {"generators": gens, "faces": faces}


def simplicial_set_from_json(doc, name="loaded"):
    """Build and fully validate a simplicial set from its JSON document."""
    labels = doc["generators"]
    by_dim = {}
    table = {}
    for n, row in enumerate(labels):
        gens = [GeneratorId(n, i, lbl) for i, lbl in enumerate(row)]
        if gens:
            by_dim[n] = gens
        for g in gens:
            table[(n, g.index)] = g
    faces = {}
    for key, entries in doc["faces"].items():
        dim_s, idx_s = key.split("/")
        g = table[(int(dim_s), int(idx_s))]
        fs = []
        for e in entries:
            target = table[(e["dim"], e["index"])]
            fs.append(Simplex(tuple(e["word"]), target))
        faces[g] = tuple(fs)
    return SimplicialSet(name, by_dim, faces, validate=True)


def load(path_or_doc, name="loaded"):
    if isinstance(path_or_doc, (str, bytes)):
        with open(path_or_doc) as fh:
            doc = json.load(fh)
    else:
        doc = path_or_doc
    return simplicial_set_from_json(doc, name=name)
