"""Root systems, Weyl groups, rank-2 root subsystems and the scalar
one-form identities of the trigonometric connection.

Roots are stored as integer coordinate tuples in the simple-root basis.
The invariant form is normalised so that long roots have squared length 2;
its Gram matrix is G_ij = d_i * a_ij with d_i = (alpha_i, alpha_i)/2.
Elements of the Cartan subalgebra are carried in fundamental-coweight
coordinates, so a root beta pairs with a coweight vector v as the plain
dot product of coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .matrices import rational_solve

# Cartan matrices a_ij = <alpha_i^vee, alpha_j> and the half square
# lengths d_i, long roots normalised to (alpha, alpha) = 2.
_CARTAN = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "A4": (
        [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
        [1, 1, 1, 1],
    ),
    "B2": ([[2, -1], [-2, 2]], [1, Fraction(1, 2)]),
    "B3": ([[2, -1, 0], [-1, 2, -1], [0, -2, 2]], [1, 1, Fraction(1, 2)]),
    "C3": ([[2, -1, 0], [-1, 2, -2], [0, -1, 2]], [Fraction(1, 2), Fraction(1, 2), 1]),
    "D4": (
        [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
        [1, 1, 1, 1],
    ),
    "G2": ([[2, -1], [-3, 2]], [1, Fraction(1, 3)]),
}

_ROOT_COUNTS = {  # |Phi_+| per classification
    "A1": 1, "A2": 3, "A3": 6, "A4": 10,
    "B2": 4, "B3": 9, "C3": 9, "D4": 12, "G2": 6,
}


def _height(r):
    return sum(r)


class RootSystem:
    def __init__(self, label: str):
        if label not in _CARTAN:
            raise ValueError(f"unsupported type {label!r}; have {sorted(_CARTAN)}")
        self.label = label
        cartan, d = _CARTAN[label]
        self.rank = len(cartan)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.d = tuple(Fraction(x) for x in d)
        self.gram = tuple(
            tuple(self.d[i] * self.cartan[i][j] for j in range(self.rank))
            for i in range(self.rank)
        )
        self.simple_roots = tuple(
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        )
        self.positive_roots = self._generate_positive()
        if len(self.positive_roots) != _ROOT_COUNTS[label]:
            raise AssertionError(
                f"{label}: got {len(self.positive_roots)} positive roots"
            )
        self.all_roots = self.positive_roots + tuple(
            tuple(-x for x in r) for r in self.positive_roots
        )

    # -- basic geometry -------------------------------------------------

    def reflect_root(self, i: int, r):
        """s_i acting on root coordinates."""
        c = sum(self.cartan[i][j] * r[j] for j in range(self.rank))
        out = list(r)
        out[i] -= c
        return tuple(out)

    def reflect_coweight(self, i: int, v):
        """s_i acting on fundamental-coweight coordinates."""
        out = list(v)
        for j in range(self.rank):
            out[j] = out[j] - v[i] * self.cartan[i][j]
        return tuple(out)

    def inner(self, a, b) -> Fraction:
        g = self.gram
        return sum(
            a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)
        )

    def norm2(self, r) -> Fraction:
        return self.inner(r, r)

    def coroot(self, r):
        """alpha^vee = 2 alpha/(alpha,alpha) in fundamental-coweight
        coordinates: its j-th coordinate is alpha_j(alpha^vee)."""
        n2 = self.norm2(r)
        return tuple(
            2 * sum(self.gram[j][k] * r[k] for k in range(self.rank)) / n2
            for j in range(self.rank)
        )

    def pairing(self, root, v) -> Fraction:
        """beta(v) for v in coweight coordinates."""
        return sum(Fraction(a) * Fraction(b) for a, b in zip(root, v))

    def is_positive(self, r) -> bool:
        return any(x > 0 for x in r)

    def fundamental_coweight(self, i: int):
        v = [Fraction(0)] * self.rank
        v[i] = Fraction(1)
        return tuple(v)

    def nu_of_coweight(self, v):
        """nu(v) in simple-root coordinates for v in coweight coordinates,
        i.e. solve G x = v (columns of G^-1)."""
        rows = [list(r) + [v[i]] for i, r in enumerate(self.gram)]
        sol = rational_solve([r[:-1] for r in rows], [r[-1] for r in rows])
        return tuple(sol)

    def _generate_positive(self):
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect_root(i, r)
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        pos = [r for r in seen if self.is_positive(r)]
        pos.sort(key=lambda r: (_height(r), r))
        # sanity: every orbit element is +/- a positive one
        assert len(seen) == 2 * len(pos)
        return tuple(pos)

    def describe(self) -> str:
        lines = [
            f"type {self.label}, rank {self.rank}",
            "cartan: " + "; ".join(" ".join(str(x) for x in row) for row in self.cartan),
            f"positive roots ({len(self.positive_roots)}):",
        ]
        for r in self.positive_roots:
            lines.append(
                "  " + " ".join(str(x) for x in r) + f"   (len^2 {self.norm2(r)})"
            )
        return "\n".join(lines)


def build_root_system(label: str) -> RootSystem:
    return RootSystem(label)


# -- Weyl group ---------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]  # action on root coordinates

    def apply_root(self, r):
        return tuple(
            sum(row[j] * r[j] for j in range(len(r))) for row in self.matrix
        )


class WeylGroup:
    """Fully materialised Weyl group (fine up to |W| ~ 1000 here)."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        gens = []
        for i in range(n):
            mat = [[1 if k == j else 0 for j in range(n)] for k in range(n)]
            for j in range(n):
                mat[i][j] -= rs.cartan[i][j]
            gens.append(tuple(tuple(r) for r in mat))
        self.gen_matrices = gens
        ident = tuple(tuple(1 if k == j else 0 for j in range(n)) for k in range(n))
        elements = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                w = elements[m]
                for i, g in enumerate(gens):
                    gm = self._matmul(g, m)
                    if gm not in elements:
                        elements[gm] = (i,) + w
                        nxt.append(gm)
            frontier = nxt
        self.elements = tuple(
            WeylElement(word, mat) for mat, word in elements.items()
        )
        self._by_matrix = {e.matrix: e for e in self.elements}
        self.identity = self._by_matrix[ident]

    @staticmethod
    def _matmul(a, b):
        n = len(a)
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    def __len__(self):
        return len(self.elements)

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_matrix[self._matmul(a.matrix, b.matrix)]

    def inverse(self, w: WeylElement) -> WeylElement:
        # w = s_{i1} o ... o s_{il}, so w^-1 = s_{il} o ... o s_{i1}
        n = self.rs.rank
        m = tuple(tuple(1 if k == j else 0 for j in range(n)) for k in range(n))
        for i in w.word:
            m = self._matmul(self.gen_matrices[i], m)
        return self._by_matrix[m]

    def simple_reflection(self, i: int) -> WeylElement:
        return self._by_matrix[self.gen_matrices[i]]

    def longest_element(self) -> WeylElement:
        return max(self.elements, key=lambda e: len(e.word))

    def inversions(self, w: WeylElement) -> frozenset:
        """N(w) = positive roots sent to negative roots by w."""
        rs = self.rs
        return frozenset(
            b for b in rs.positive_roots if not rs.is_positive(w.apply_root(b))
        )

    def apply_coweight(self, w: WeylElement, v):
        out = tuple(Fraction(x) for x in v)
        for i in reversed(w.word):
            out = self.rs.reflect_coweight(i, out)
        return out

    def sign_of_root(self, w: WeylElement, beta) -> int:
        """+1 if w(beta) is positive, -1 otherwise."""
        return 1 if self.rs.is_positive(w.apply_root(beta)) else -1


# -- integer lattices (membership via a triangular basis) ----------------


def lattice_basis(vectors):
    """Triangular Z-basis of the lattice spanned by integer vectors, as a
    list of (pivot column, row) with strictly increasing pivots."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    for c in range(ncols):
        while True:
            idx = [
                i for i, r in enumerate(rows)
                if r[c] != 0 and all(x == 0 for x in r[:c])
            ]
            if len(idx) <= 1:
                break
            idx.sort(key=lambda i: abs(rows[i][c]))
            i0 = idx[0]
            for i in idx[1:]:
                q = rows[i][c] // rows[i0][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[i0])]
            rows = [r for r in rows if any(r)]
        idx = [
            i for i, r in enumerate(rows)
            if r[c] != 0 and all(x == 0 for x in r[:c])
        ]
        if idx:
            r = rows.pop(idx[0])
            if r[c] < 0:
                r = [-x for x in r]
            basis.append((c, r))
    return basis


def in_lattice(basis, v) -> bool:
    v = list(v)
    for p, b in basis:
        if v[p]:
            if v[p] % b[p]:
                return False
            q = v[p] // b[p]
            v = [vv - q * bb for vv, bb in zip(v, b)]
    return not any(v)


# -- rank-2 root subsystems ----------------------------------------------


@dataclass(frozen=True)
class RankTwoSubsystem:
    roots: frozenset
    positive: tuple
    type_tag: str
    is_complete: bool
    simples: tuple  # the two indecomposable elements of the positive part

    def contains(self, r) -> bool:
        return r in self.roots


_TYPE_BY_COUNT = {2: "A1xA1", 3: "A2", 4: "B2", 6: "G2"}


def _subsystem_from_rootset(rs: RootSystem, roots: frozenset) -> RankTwoSubsystem:
    pos = tuple(sorted((r for r in roots if rs.is_positive(r)), key=lambda r: (_height(r), r)))
    pos_set = set(pos)
    simples = tuple(
        b for b in pos
        if not any(
            tuple(x - y for x, y in zip(b, a)) in pos_set for a in pos_set if a != b
        )
    )
    # complete <=> R-span meets Phi exactly in the subsystem
    span_rows = [list(p) for p in pos[:2]] if len(pos) >= 2 else [list(pos[0])]
    complete = True
    for r in rs.all_roots:
        if r in roots:
            continue
        if rational_solve(list(map(list, zip(*span_rows))), list(r)) is not None:
            complete = False
            break
    return RankTwoSubsystem(
        roots=roots,
        positive=pos,
        type_tag=_TYPE_BY_COUNT[len(pos)],
        is_complete=complete,
        simples=simples,
    )


def enumerate_rank2_subsystems(rs: RootSystem):
    """All rank-2 root subsystems: subsets closed under integer-span
    intersection, enumerated as closures of root pairs."""
    found = {}
    pos = rs.positive_roots
    for a, b in combinations(pos, 2):
        basis = lattice_basis([a, b])
        if len(basis) < 2:
            continue  # proportional
        members = None
        while True:
            members = frozenset(r for r in rs.all_roots if in_lattice(basis, r))
            basis2 = lattice_basis(list(members))
            members2 = frozenset(r for r in rs.all_roots if in_lattice(basis2, r))
            if members2 == members:
                break
            basis = basis2
        if members not in found:
            found[members] = _subsystem_from_rootset(rs, members)
    return sorted(found.values(), key=lambda s: (len(s.positive), s.positive))


def rank2_subsystems_bruteforce(rs: RootSystem):
    """Independent oracle: test the closure definition on every symmetric
    subset of the roots, keeping those of lattice rank 2."""
    out = set()
    pos = rs.positive_roots
    for size in range(2, len(pos) + 1):
        for subset in combinations(pos, size):
            full = set(subset) | {tuple(-x for x in r) for r in subset}
            basis = lattice_basis(list(full))
            if len(basis) != 2:
                continue
            closed = all(
                (r in full) or not in_lattice(basis, r) for r in rs.all_roots
            )
            if closed:
                out.add(frozenset(full))
    return sorted(
        (_subsystem_from_rootset(rs, s) for s in out),
        key=lambda s: (len(s.positive), s.positive),
    )


def component_group_order(psi: RankTwoSubsystem) -> int:
    """Order of the saturation quotient of the subsystem's root lattice
    (gcd of the 2x2 minors of a lattice basis)."""
    basis = lattice_basis([list(r) for r in psi.positive])
    (_, b1), (_, b2) = basis[0], basis[1]
    n = len(b1)
    g = 0
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(g, abs(b1[i] * b2[j] - b1[j] * b2[i]))
    return g


def injective_characters(order: int):
    """Exponents k with gcd(k, order) = 1: the characters of Z/order with
    trivial kernel.  All are reported; no canonical choice is made."""
    return [k for k in range(1, order + 1) if gcd(k, order) == 1]


# -- Weyl group of a subsystem --------------------------------------------


def subsystem_weyl_elements(rs: RootSystem, psi: RankTwoSubsystem):
    """The reflection group W(Psi) as matrices on root coordinates."""
    n = rs.rank
    gens = []
    for beta in psi.positive:
        n2 = rs.norm2(beta)
        mat = []
        for k in range(n):
            row = []
            for j in range(n):
                ej = tuple(1 if t == j else 0 for t in range(n))
                val = (1 if k == j else 0) - 2 * rs.inner(ej, beta) / n2 * beta[k]
                row.append(val)
            mat.append(tuple(row))
        gens.append(tuple(mat))
    ident = tuple(tuple(Fraction(1 if k == j else 0) for j in range(n)) for k in range(n))
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                gm = tuple(
                    tuple(sum(g[i][k] * m[k][j] for k in range(n)) for j in range(n))
                    for i in range(n)
                )
                if gm not in els:
                    els.add(gm)
                    nxt.append(gm)
        frontier = nxt
    return els


def _apply_mat(m, r):
    return tuple(sum(row[j] * r[j] for j in range(len(r))) for row in m)


def subsystem_inversions(rs: RootSystem, psi: RankTwoSubsystem, mat) -> frozenset:
    return frozenset(
        b for b in psi.positive if not rs.is_positive(_apply_mat(mat, b))
    )


# -- inversion set decomposition -------------------------------------------


class PreconditionError(ValueError):
    pass


def complete_rank2_containing(rs: RootSystem, subsystems, alpha):
    """R_2(alpha): complete rank-2 subsystems containing alpha as a
    non-simple root."""
    out = []
    for psi in subsystems:
        if not psi.is_complete:
            continue
        if alpha in psi.roots and alpha not in psi.simples:
            out.append(psi)
    return out


def decompose_inversion_set(rs: RootSystem, W: WeylGroup, alpha, w: WeylElement,
                            subsystems=None):
    """Partition N(w^-1) over the complete rank-2 subsystems containing
    alpha as a non-simple root; returns {psi: (part, w_psi_matrix)}.

    Precondition: w^-1(alpha) is a simple root and w has minimal length
    among elements with that property.  The minimality is the choice the
    curvature cancellation actually uses; without it the partition can
    fail (already in A2: alpha = alpha_1, w = s_2 s_1 has nonempty
    N(w^-1) while no complete rank-2 subsystem contains alpha_1 as a
    non-simple root).  For simple alpha this forces w = e and the
    partition is empty.
    """
    winv = W.inverse(w)
    pre = winv.apply_root(alpha)
    if pre not in rs.simple_roots:
        raise PreconditionError(
            f"w^-1(alpha) = {pre} is not simple (alpha={alpha}, word={w.word})"
        )
    lmin = min(
        len(u.word) for u in W.elements
        if W.inverse(u).apply_root(alpha) in rs.simple_roots
    )
    if len(w.word) != lmin:
        raise PreconditionError(
            f"w (length {len(w.word)}) is not of minimal length {lmin} "
            f"making w^-1(alpha) simple for alpha={alpha}"
        )
    if subsystems is None:
        subsystems = enumerate_rank2_subsystems(rs)
    r2 = complete_rank2_containing(rs, subsystems, alpha)
    n_inv = W.inversions(winv)
    parts = {}
    covered = set()
    for psi in r2:
        part = frozenset(b for b in n_inv if b in psi.roots)
        if not part:
            raise AssertionError(f"empty part for {psi.positive}")
        if part & covered:
            raise AssertionError("parts overlap")
        covered |= part
        # the unique w_psi in W(Psi) with N_psi(w_psi^-1) = part
        matches = [
            m for m in subsystem_weyl_elements(rs, psi)
            if subsystem_inversions(rs, psi, m) == part
        ]
        if len(matches) != 1:
            raise AssertionError(
                f"{len(matches)} elements of W(Psi) match the part"
            )
        parts[psi] = (part, matches[0])
    if covered != set(n_inv):
        raise AssertionError("parts do not cover N(w^-1)")
    return parts


# -- scalar one-form identities --------------------------------------------


@dataclass(frozen=True)
class AdjointTorusPoint:
    """Point of the adjoint torus, stored as the values zeta_i = e^{alpha_i}."""

    zeta: tuple

    def char(self, gamma):
        """e^gamma for gamma in root-lattice coordinates."""
        out = 1
        for z, k in zip(self.zeta, gamma):
            if k:
                out = out * z**k
        return out

    def is_regular(self, rs: RootSystem) -> bool:
        return all(self.char(a) != 1 for a in rs.positive_roots)


class SingularPointError(ValueError):
    pass


def _pair(a, u):
    return sum(x * y for x, y in zip(a, u))


def eta_identity_residual(point: AdjointTorusPoint, a, b, u, v):
    """|eta_a ^ eta_b - eta_a ^ eta_{a+b} - eta_{a+b} ^ eta_b - eta_{a,b}|
    contracted on the direction pair (u, v).  Exact zero at rational
    points; tiny float at complex points."""
    ab = tuple(x + y for x, y in zip(a, b))
    ea, eb, eab = point.char(a), point.char(b), point.char(ab)
    for nm, val in (("a", ea), ("b", eb), ("a+b", eab)):
        if val == 1:
            raise SingularPointError(f"e^{nm} = 1 at this point")
    ha_u, ha_v = _pair(a, u) / (ea - 1), _pair(a, v) / (ea - 1)
    hb_u, hb_v = _pair(b, u) / (eb - 1), _pair(b, v) / (eb - 1)
    hab_u, hab_v = _pair(ab, u) / (eab - 1), _pair(ab, v) / (eab - 1)
    lhs = ha_u * hb_v - ha_v * hb_u
    t1 = ha_u * hab_v - ha_v * hab_u
    t2 = hab_u * hb_v - hab_v * hb_u
    cross = (_pair(a, u) * _pair(b, v) - _pair(a, v) * _pair(b, u)) / (eab - 1)
    return abs(lhs - t1 - t2 - cross)


def eta_cross_specialization_residual(point: AdjointTorusPoint, a, b, u, v):
    """eta_{a,b} = eta_{a+b} ^ db = -eta_{a+b} ^ da, contracted on (u, v)."""
    ab = tuple(x + y for x, y in zip(a, b))
    eab = point.char(ab)
    if eab == 1:
        raise SingularPointError("e^{a+b} = 1 at this point")
    cross = (_pair(a, u) * _pair(b, v) - _pair(a, v) * _pair(b, u)) / (eab - 1)
    hab_u, hab_v = _pair(ab, u) / (eab - 1), _pair(ab, v) / (eab - 1)
    wedge_db = hab_u * _pair(b, v) - hab_v * _pair(b, u)
    wedge_da = hab_u * _pair(a, v) - hab_v * _pair(a, u)
    return max(abs(cross - wedge_db), abs(cross + wedge_da))


def chamber_shift(rs: RootSystem, W: WeylGroup, w: WeylElement, v):
    """The correction sum over Phi_+ [intersect] w(Phi_-) = N(w^-1):
    list of (root, root(v)) pairs with rational coefficients."""
    winv = W.inverse(w)
    return [(b, rs.pairing(b, v)) for b in sorted(W.inversions(winv))]
