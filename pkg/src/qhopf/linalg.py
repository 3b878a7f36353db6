"""Dense vectors/matrices and sparse tensors over cyclotomic scalars.

Maps on the algebra itself (dimension <= ~40) are dense; anything living in
a tensor power H^(x)k with k >= 2 is kept sparse as a dict from index tuples
to nonzero scalars.  The kernel solver below backs every equation-solving
module; its output is canonical (reduced echelon form of the solution
space, first nonzero entry of each basis vector normalized to 1), which is
the global tie-break used for all "unique up to scalar" comparisons.
"""

from .errors import (DimensionMismatch, OrderMismatch, SingularMatrix,
                     SlotOutOfRange)


class Vec:
    """Fixed-length dense vector of Scalars."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = list(entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other):
        return Vec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        return Vec(a - b for a, b in zip(self.entries, other.entries))

    def scale(self, c):
        return Vec(c * a for a in self.entries)

    def __eq__(self, other):
        return isinstance(other, Vec) and self.entries == other.entries

    def is_zero(self):
        return all(a.is_zero() for a in self.entries)

    def items(self):
        """Sparse iteration: (index, coeff) over nonzero entries."""
        for i, a in enumerate(self.entries):
            if a:
                yield i, a

    def first_nonzero(self):
        for i, a in enumerate(self.entries):
            if a:
                return i
        return None

    def normalized(self):
        """Scale so the first nonzero entry is one."""
        i = self.first_nonzero()
        if i is None:
            return self
        inv = self.entries[i].inverse()
        return Vec(inv * a for a in self.entries)

    def __repr__(self):
        return "Vec[%s]" % ", ".join(str(a) for a in self.entries)


class Mat:
    """Dense rows x cols matrix of Scalars."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows)

    @classmethod
    def identity(cls, n, field):
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows, ncols, field):
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __mul__(self, other):
        if isinstance(other, Vec):
            if len(other) != self.ncols:
                raise DimensionMismatch("Mat %dx%d times Vec %d"
                                        % (self.nrows, self.ncols, len(other)))
            out = []
            for row in self.rows:
                acc = None
                for a, b in zip(row, other.entries):
                    if a and b:
                        acc = a * b if acc is None else acc + a * b
                out.append(acc if acc is not None else _zero_of(self))
            return Vec(out)
        if isinstance(other, Mat):
            if other.nrows != self.ncols:
                raise DimensionMismatch("matrix product shape mismatch")
            cols = list(zip(*other.rows))
            out = []
            for row in self.rows:
                orow = []
                for col in cols:
                    acc = None
                    for a, b in zip(row, col):
                        if a and b:
                            acc = a * b if acc is None else acc + a * b
                    orow.append(acc if acc is not None else _zero_of(self))
                out.append(orow)
            return Mat(out)
        return NotImplemented

    def column(self, j):
        return Vec(row[j] for row in self.rows)

    def sparse_columns(self):
        """List over j of tuples (i, coeff) for the nonzero column entries."""
        cols = [[] for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if a:
                    cols[j].append((i, a))
        return [tuple(c) for c in cols]

    def inverse(self):
        if self.nrows != self.ncols:
            raise SingularMatrix("only square matrices invert")
        n = self.nrows
        field = _field_of(self)
        aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [inv * a for a in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    c = aug[r][col]
                    aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
        return Mat([row[n:] for row in aug])

    def rank(self):
        rows = [dict((j, a) for j, a in enumerate(r) if a) for r in self.rows]
        return len(_echelonize(rows))

    def transpose(self):
        return Mat(list(zip(*self.rows)))

    def __repr__(self):
        return "Mat(%dx%d)" % (self.nrows, self.ncols)


def _zero_of(mat):
    for row in mat.rows:
        for a in row:
            return a.field.zero
    raise ValueError("empty matrix has no field")


def _field_of(mat):
    return mat.rows[0][0].field


# -- kernel ---------------------------------------------------------------------

def kernel(M):
    """Exact basis of the right null space of M, canonically normalized."""
    rows = [dict((j, a) for j, a in enumerate(r) if a) for r in M.rows]
    return [Vec(v) for v in nullspace(rows, M.ncols, _field_of(M))]


def nullspace(rows, ncols, field):
    """Null space from sparse rows (dicts col->Scalar); list of dense lists.

    The result is the reduced echelon basis of the solution space with each
    vector's first nonzero entry scaled to 1; it is independent of row order.
    """
    pivots = _echelonize(rows)
    pivot_cols = sorted(pivots)
    # back-substitute to full reduction
    for idx in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[idx]
        row = pivots[c]
        for c2 in pivot_cols[idx + 1:]:
            a = row.get(c2)
            if a:
                for j, b in pivots[c2].items():
                    v = row.get(j, None)
                    nv = (v - a * b) if v is not None else -(a * b)
                    if nv:
                        row[j] = nv
                    elif j in row:
                        del row[j]
    basis = []
    free_cols = [j for j in range(ncols) if j not in pivots]
    for f in free_cols:
        v = [field.zero] * ncols
        v[f] = field.one
        for c in pivot_cols:
            a = pivots[c].get(f)
            if a:
                v[c] = -a
        basis.append(v)
    return _canonical_basis(basis, ncols, field)


def _echelonize(rows):
    """Sparse row reduction; returns dict pivot_col -> unit-leading row."""
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = row[c].inverse()
                pivots[c] = dict((j, inv * a) for j, a in row.items())
                break
            a = row.pop(c)
            for j, b in piv.items():
                if j == c:
                    continue
                v = row.get(j, None)
                nv = (v - a * b) if v is not None else -(a * b)
                if nv:
                    row[j] = nv
                elif j in row:
                    del row[j]
        # fully reduced rows vanish
    return pivots


def _canonical_basis(basis, ncols, field):
    """RREF the given spanning vectors and normalize leading entries to 1."""
    rows = [dict((j, a) for j, a in enumerate(v) if a) for v in basis]
    pivots = _echelonize(rows)
    pivot_cols = sorted(pivots)
    for idx in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[idx]
        row = pivots[c]
        for c2 in pivot_cols[idx + 1:]:
            a = row.get(c2)
            if a:
                for j, b in pivots[c2].items():
                    v = row.get(j, None)
                    nv = (v - a * b) if v is not None else -(a * b)
                    if nv:
                        row[j] = nv
                    elif j in row:
                        del row[j]
    out = []
    for c in pivot_cols:
        v = [field.zero] * ncols
        for j, a in pivots[c].items():
            v[j] = a
        out.append(v)
    return out


# -- sparse tensors ---------------------------------------------------------------


class ProductTable:
    """Basis-product lookup built from an order-3 multiplication tensor.

    mult has index layout (i, j, k): e_i * e_j = sum_k mult[i,j,k] e_k.
    Caches pair and triple products of basis elements as sparse tuples.
    """

    def __init__(self, mult, dim, field):
        self.dim = dim
        self.field = field
        pairs = [[() for _ in range(dim)] for _ in range(dim)]
        acc = {}
        for (i, j, k), c in mult.terms.items():
            acc.setdefault((i, j), []).append((k, c))
        for (i, j), lst in acc.items():
            lst.sort()
            pairs[i][j] = tuple(lst)
        self.pairs = pairs
        self._triples = {}

    def mul_basis(self, i, j):
        return self.pairs[i][j]

    def triple(self, i, j, k):
        """e_i * e_j * e_k as a sparse tuple of (index, coeff)."""
        key = (i, j, k)
        out = self._triples.get(key)
        if out is None:
            acc = {}
            for m, c in self.pairs[i][j]:
                for n, c2 in self.pairs[m][k]:
                    v = acc.get(n)
                    nv = c * c2 if v is None else v + c * c2
                    if nv:
                        acc[n] = nv
                    elif n in acc:
                        del acc[n]
            out = tuple(sorted(acc.items()))
            self._triples[key] = out
        return out

    def mul_sparse(self, a, b):
        """Product of two sparse dicts index->Scalar."""
        acc = {}
        for i, ca in a.items():
            if not ca:
                continue
            row = self.pairs[i]
            for j, cb in b.items():
                c = ca * cb
                if not c:
                    continue
                for k, ck in row[j]:
                    v = acc.get(k)
                    nv = c * ck if v is None else v + c * ck
                    if nv:
                        acc[k] = nv
                    elif k in acc:
                        del acc[k]
        return acc


class TensorElement:
    """Sparse element of H^(x)k: map from k-tuples of basis indices to scalars."""

    __slots__ = ("order", "dim", "field", "terms")

    def __init__(self, order, dim, field, terms=None):
        self.order = order
        self.dim = dim
        self.field = field
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    assert len(key) == order and all(0 <= i < dim for i in key)
                    self.terms[key] = c

    def _like(self, order, terms):
        t = TensorElement(order, self.dim, self.field)
        t.terms = terms
        return t

    def copy(self):
        return self._like(self.order, dict(self.terms))

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.order == other.order
                and self.dim == other.dim and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.order != other.order:
            raise OrderMismatch("tensor orders %d vs %d" % (self.order, other.order))
        acc = dict(self.terms)
        for key, c in other.terms.items():
            v = acc.get(key)
            nv = c if v is None else v + c
            if nv:
                acc[key] = nv
            elif key in acc:
                del acc[key]
        return self._like(self.order, acc)

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def __neg__(self):
        return self.scale(-self.field.one)

    def scale(self, c):
        if not c:
            return self._like(self.order, {})
        return self._like(self.order, dict((k, c * v) for k, v in self.terms.items()))

    def tensor(self, other):
        acc = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                acc[k1 + k2] = c1 * c2
        return self._like(self.order + other.order, acc)

    def permute(self, perm):
        """Reorder slots: new key[s] = old key[perm[s]]."""
        assert sorted(perm) == list(range(self.order))
        acc = {}
        for key, c in self.terms.items():
            acc[tuple(key[p] for p in perm)] = c
        return self._like(self.order, acc)

    def mul(self, other, table):
        """Slotwise product using the algebra multiplication table."""
        if self.order != other.order:
            raise OrderMismatch("tensor orders %d vs %d" % (self.order, other.order))
        out = {}
        k = self.order
        for key1, c1 in self.terms.items():
            for key2, c2 in other.terms.items():
                c = c1 * c2
                if not c:
                    continue
                _expand_product(out, key1, key2, c, table, k)
        return self._like(self.order, _strip_zeros(out))

    def merge_mul(self, s_left, s_right, table):
        """Multiply slot s_left by slot s_right (in that order); the product
        lands at min(s_left, s_right) and the other slot disappears."""
        if s_left == s_right:
            raise SlotOutOfRange("merge slots must differ")
        lo, hi = min(s_left, s_right), max(s_left, s_right)
        acc = {}
        for key, c in self.terms.items():
            rest = key[:lo] + key[lo + 1:hi] + key[hi + 1:]
            for m, cm in table.mul_basis(key[s_left], key[s_right]):
                nk = rest[:lo] + (m,) + rest[lo:]
                v = acc.get(nk)
                nv = c * cm if v is None else v + c * cm
                if nv:
                    acc[nk] = nv
                elif nk in acc:
                    del acc[nk]
        return self._like(self.order - 1, acc)

    def apply_map(self, slot, columns):
        """Apply a linear map to one slot; columns[i] = sparse column tuples."""
        if not 0 <= slot < self.order:
            raise SlotOutOfRange("slot %d of order-%d tensor" % (slot, self.order))
        acc = {}
        for key, c in self.terms.items():
            for i2, cm in columns[key[slot]]:
                nk = key[:slot] + (i2,) + key[slot + 1:]
                v = acc.get(nk)
                nv = c * cm if v is None else v + c * cm
                if nv:
                    acc[nk] = nv
                elif nk in acc:
                    del acc[nk]
        return self._like(self.order, acc)

    def apply_coproduct(self, slot, cop):
        """Split one slot in two via cop[i] = tuple(((j, k), coeff), ...)."""
        if not 0 <= slot < self.order:
            raise SlotOutOfRange("slot %d of order-%d tensor" % (slot, self.order))
        acc = {}
        for key, c in self.terms.items():
            for (j, k), cm in cop[key[slot]]:
                nk = key[:slot] + (j, k) + key[slot + 1:]
                v = acc.get(nk)
                nv = c * cm if v is None else v + c * cm
                if nv:
                    acc[nk] = nv
                elif nk in acc:
                    del acc[nk]
        return self._like(self.order + 1, acc)

    def apply_functional(self, slot, values):
        """Evaluate a linear form on one slot, lowering the order.

        values: dense list, values[i] = f(e_i).  Returns a TensorElement of
        order-1 lower, or a Scalar when the tensor has order 1.
        """
        if not 0 <= slot < self.order:
            raise SlotOutOfRange("slot %d of order-%d tensor" % (slot, self.order))
        if self.order == 1:
            acc = self.field.zero
            for key, c in self.terms.items():
                acc = acc + c * values[key[0]]
            return acc
        acc = {}
        for key, c in self.terms.items():
            w = values[key[slot]]
            if not w:
                continue
            nk = key[:slot] + key[slot + 1:]
            v = acc.get(nk)
            nv = c * w if v is None else v + c * w
            if nv:
                acc[nk] = nv
            elif nk in acc:
                del acc[nk]
        return self._like(self.order - 1, acc)

    def slot_weight(self, slot, values):
        """Like apply_functional but keeps the slot count by folding the
        weight into the coefficient (used for gamma-factors on module legs)."""
        return self.apply_functional(slot, values)

    def __repr__(self):
        n = len(self.terms)
        return "TensorElement(order=%d, dim=%d, %d term%s)" % (
            self.order, self.dim, n, "" if n == 1 else "s")

    def pretty(self, labels):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            c = self.terms[key]
            word = "(x)".join(labels[i] for i in key)
            bits.append("(%s)*%s" % (c, word))
        return " + ".join(bits)


def _expand_product(out, key1, key2, c, table, k):
    """Accumulate c * prod_s (e_key1[s] e_key2[s]) into out."""
    partial = [((), c)]
    for s in range(k):
        factors = table.mul_basis(key1[s], key2[s])
        if not factors:
            return
        nxt = []
        for prefix, cc in partial:
            for m, cm in factors:
                nxt.append((prefix + (m,), cc * cm))
        partial = nxt
    for key, cc in partial:
        v = out.get(key)
        nv = cc if v is None else v + cc
        if nv:
            out[key] = nv
        elif key in out:
            del out[key]


def _strip_zeros(d):
    return dict((k, v) for k, v in d.items() if v)


def tensor_contract(t, slots):
    """Apply a map (Mat) or a functional (Vec) per listed slot.

    Functional slots lower the order; a fully contracted result is a Scalar.
    Slots refer to positions in the INPUT tensor and must be distinct.
    """
    seen = set()
    for s, _ in slots:
        if not 0 <= s < t.order:
            raise SlotOutOfRange("slot %d of order-%d tensor" % (s, t.order))
        if s in seen:
            raise SlotOutOfRange("duplicate slot %d" % s)
        seen.add(s)
    maps = [(s, m) for s, m in slots if isinstance(m, Mat)]
    funcs = [(s, v) for s, v in slots if isinstance(v, Vec)]
    out = t
    for s, m in maps:
        if m.nrows != t.dim or m.ncols != t.dim:
            raise DimensionMismatch("map must be %dx%d" % (t.dim, t.dim))
        out = out.apply_map(s, m.sparse_columns())
    # contract functionals from the highest slot down so indices stay valid
    for s, v in sorted(funcs, reverse=True):
        if len(v) != t.dim:
            raise DimensionMismatch("functional must have length %d" % t.dim)
        out = out.apply_functional(s, v.entries)
    return out


def tensor_mul(a, b, mult):
    """Slotwise product in H^(x)k given the order-3 multiplication tensor."""
    if mult.order != 3:
        raise OrderMismatch("multiplication tensor must have order 3")
    table = ProductTable(mult, a.dim, a.field)
    return a.mul(b, table)
