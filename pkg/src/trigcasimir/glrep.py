"""Tensor powers of the vector representation of gl_n.

A basis vector of (C^n)^(x m) is a word (i_1, ..., i_m) over {1..n},
flattened row-major with the leftmost factor most significant.  Weights
are the occupancy vectors; sl_n weights are read by centering.  All
operators are exact rational matrices.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .matrices import ExactMatrix, commutator, nilpotent_exp


class TensorModule:
    """(C^n)^(x m) with its diagonal gl_n action."""

    def __init__(self, n: int, m: int):
        if n < 1 or m < 0:
            raise ValueError("need n >= 1, m >= 0")
        self.n = n
        self.m = m
        self.dim = n**m
        self._cache: dict = {}

    def words(self):
        for idx in range(self.dim):
            yield self.word(idx)

    def word(self, idx: int):
        """Basis index -> word (i_1..i_m), digits in 1..n."""
        out = []
        for _ in range(self.m):
            out.append(idx % self.n + 1)
            idx //= self.n
        return tuple(reversed(out))

    def index(self, word) -> int:
        idx = 0
        for c in word:
            idx = idx * self.n + (c - 1)
        return idx

    def weight(self, idx: int):
        """gl_n weight of a basis vector: occupancy counts."""
        w = [0] * self.n
        for c in self.word(idx):
            w[c - 1] += 1
        return tuple(w)

    def sl_weight(self, idx: int):
        """Centered weight (the sl_n reading)."""
        w = self.weight(idx)
        mean = Fraction(sum(w), self.n)
        return tuple(Fraction(x) - mean for x in w)

    # -- operators ------------------------------------------------------

    def act(self, i: int, j: int) -> ExactMatrix:
        """Diagonal action of E_ij: sum over factors of the single-slot
        elementary matrix."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"E_{i}{j} out of range for gl_{self.n}")
        key = ("act", i, j)
        if key in self._cache:
            return self._cache[key]
        ent = {}
        for idx in range(self.dim):
            word = self.word(idx)
            for p, c in enumerate(word):
                if c == j:
                    tgt = self.index(word[:p] + (i,) + word[p + 1 :])
                    ent[(tgt, idx)] = ent.get((tgt, idx), 0) + 1
        mat = ExactMatrix.from_entries(self.dim, ent)
        self._cache[key] = mat
        return mat

    def casimir(self, a: int, b: int) -> ExactMatrix:
        """Truncated Casimir for the root theta_a - theta_b:
        E_ab E_ba + E_ba E_ab (symmetric in a <-> b)."""
        if a == b:
            raise ValueError("need a != b")
        key = ("kappa", min(a, b), max(a, b))
        if key in self._cache:
            return self._cache[key]
        x, y = self.act(a, b), self.act(b, a)
        mat = x * y + y * x
        self._cache[key] = mat
        return mat

    def diag(self, values) -> ExactMatrix:
        """Diagonal matrix from a function of the basis weight."""
        return ExactMatrix.from_entries(
            self.dim, {(i, i): values(self.weight(i)) for i in range(self.dim)}
        )

    def cartan(self, coeffs) -> ExactMatrix:
        """Action of the diagonal matrix sum_k coeffs[k] E_kk."""
        return self.diag(
            lambda w: sum(Fraction(c) * x for c, x in zip(coeffs, w))
        )

    # -- Tits operators ---------------------------------------------------

    def tits_operator(self, a: int, b: int = None) -> ExactMatrix:
        """Triple exponential exp(e) exp(-f) exp(e) for the root
        theta_a - theta_b (b defaults to a+1, the simple case)."""
        if b is None:
            b = a + 1
        key = ("tits", a, b)
        if key in self._cache:
            return self._cache[key]
        e, f = self.act(a, b), self.act(b, a)
        mat = nilpotent_exp(e) * nilpotent_exp(-f) * nilpotent_exp(e)
        self._cache[key] = mat
        return mat

    def tits_simple(self, i: int) -> ExactMatrix:
        return self.tits_operator(i, i + 1)

    # -- zero weight space -------------------------------------------------

    def zero_weight_indices(self):
        """Basis indices of the sl_n zero weight space."""
        return [
            idx for idx in range(self.dim)
            if all(x == 0 for x in self.sl_weight(idx))
        ]

    def restrict(self, mat: ExactMatrix, indices) -> ExactMatrix:
        """Submatrix on a weight-stable set of basis indices; checked."""
        outside = set(range(self.dim)) - set(indices)
        for j in indices:
            for i in outside:
                if mat.entry(i, j):
                    raise ValueError("subspace is not invariant")
        return ExactMatrix.from_rows(
            [[mat.entry(i, j) for j in indices] for i in indices]
        )


@lru_cache(maxsize=None)
def tensor_module(n: int, m: int) -> TensorModule:
    return TensorModule(n, m)


def is_small(module: TensorModule):
    """True iff no sl_n-centered module weight equals twice a root.

    Returns (flag, witness): witness is (gl weight, (a, b)) with the
    weight centering to 2(theta_a - theta_b) when the module is not small.
    """
    n = module.n
    seen = {}
    for idx in range(module.dim):
        w = module.sl_weight(idx)
        if w not in seen:
            seen[w] = module.weight(idx)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            target = tuple(
                Fraction(2 * ((k == a - 1) - (k == b - 1))) for k in range(n)
            )
            if target in seen:
                return False, (seen[target], (a, b))
    return True, None


def lemma_v0_residual(module: TensorModule, a: int, b: int) -> ExactMatrix:
    """kappa_alpha - (alpha, alpha)(1 - s_alpha) on the zero weight space,
    s_alpha acting through the Tits operator.  Zero exactly on small
    modules; the caller decides whether to require smallness."""
    v0 = module.zero_weight_indices()
    if not v0:
        raise ValueError("zero weight space is trivial")
    kappa = module.restrict(module.casimir(a, b), v0)
    s = module.restrict(module.tits_operator(a, b), v0)
    ident = ExactMatrix.identity(len(v0))
    # (alpha, alpha) = 2 for every root of sl_n under the trace form
    return kappa - (ident - s).scale(Fraction(2))


def weight_shift_check(module: TensorModule, i: int, j: int) -> bool:
    """act(E_ij) maps weight mu to weight mu + theta_i - theta_j."""
    mat = module.act(i, j)
    for col in range(module.dim):
        w = list(module.weight(col))
        w[i - 1] += 1
        w[j - 1] -= 1
        for row in range(module.dim):
            if mat.entry(row, col) and list(module.weight(row)) != w:
                return False
    return True


def gln_commutator_residual(module: TensorModule, i, j, k, l) -> ExactMatrix:
    """[E_ij, E_kl] - delta_jk E_il + delta_li E_kj, realized."""
    lhs = commutator(module.act(i, j), module.act(k, l))
    if j == k:
        lhs = lhs - module.act(i, l)
    if l == i:
        lhs = lhs + module.act(k, j)
    return lhs
