"""Concrete algebra families: group algebras, table algebras and association
schemes, groupoid algebras with their weak Hopf structure, and Drinfeld
doubles of finite groups.

All constructors return an FDStarAlgebra plus whatever extra structure the
family carries (antipode, distinguished element, comultiplication).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AntiAlgebraMap, DualStructureData, FDStarAlgebra
from .errors import (AxiomViolation, BadGroup, BadGroupoid, NoHaar,
                     NonUniqueHaar, NotInvolution)
from .linalg import DEFAULT_TOL, Tolerance, nullspace


# --- finite groups ---

@dataclass(frozen=True)
class GroupTable:
    """Finite group by its multiplication table; element 0 is the identity."""

    order: int
    table: np.ndarray       # table[i, j] = index of g_i g_j
    inverse: np.ndarray

    @staticmethod
    def validated(order: int, table, inverse) -> "GroupTable":
        t = np.asarray(table, dtype=int)
        inv = np.asarray(inverse, dtype=int)
        n = order
        if t.shape != (n, n) or inv.shape != (n,):
            raise BadGroup("table must be order x order, inverse length order")
        if t.min(initial=0) < 0 or t.max(initial=0) >= n:
            raise BadGroup("table entries out of range")
        if not (np.all(t[0] == np.arange(n)) and np.all(t[:, 0] == np.arange(n))):
            raise BadGroup("element 0 is not the identity")
        for i in range(n):
            if t[i, inv[i]] != 0 or t[inv[i], i] != 0:
                raise BadGroup(f"inverse of element {i} is wrong")
        # associativity via the permutation test: rows and columns must be
        # permutations, and (ij)k = i(jk)
        for i in range(n):
            for j in range(n):
                if not np.array_equal(np.sort(t[i]), np.arange(n)):
                    raise BadGroup(f"row {i} is not a permutation")
                lhs = t[t[i, j]]
                rhs = t[i][t[j]]
                if not np.array_equal(lhs, rhs):
                    raise BadGroup(f"associativity fails at ({i}, {j})")
        return GroupTable(n, t, inv)

    def conjugate(self, h: int, g: int) -> int:
        return self.table[self.table[h, g], self.inverse[h]]


def cyclic_group(n: int) -> GroupTable:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return GroupTable.validated(n, table, (-idx) % n)


def group_from_permutations(gens: list[list[int]]) -> GroupTable:
    """Group generated by permutations, as a multiplication table.  The
    identity ends up at index 0."""
    deg = len(gens[0])
    ident = tuple(range(deg))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    gen_t = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gen_t:
                q = tuple(p[g[i]] for i in range(deg))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    elems.sort(key=lambda p: (p != ident, p))
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=int)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(q[p[k]] for k in range(deg))]
    inv = np.array([table[i].tolist().index(0) for i in range(n)])
    return GroupTable.validated(n, table, inv)


def group_algebra(G: GroupTable,
                  tol: Tolerance = DEFAULT_TOL
                  ) -> tuple[FDStarAlgebra, DualStructureData,
                             "SeparabilityIdempotent"]:
    """C[G] with (e_g)* = e_{g^{-1}}, antipode S(e_g) = e_{g^{-1}},
    distinguished element g = 1, and the Haar-derived separability
    idempotent (1/n) sum_g g^{-1} (x) g."""
    from .algebra import SeparabilityIdempotent
    n = G.order
    c = np.zeros((n, n, n), dtype=complex)
    c[np.arange(n)[:, None], np.arange(n)[None, :], G.table] = 1.0
    sigma = np.zeros((n, n), dtype=complex)
    sigma[G.inverse, np.arange(n)] = 1.0
    unit = np.zeros(n, dtype=complex)
    unit[0] = 1.0
    A = FDStarAlgebra(c, unit, sigma, tol)
    S = AntiAlgebraMap.validated(A, sigma.copy())
    pairs = []
    for g in range(n):
        x = np.zeros(n, dtype=complex)
        x[G.inverse[g]] = 1.0 / n
        y = np.zeros(n, dtype=complex)
        y[g] = 1.0
        pairs.append((x, y))
    E = SeparabilityIdempotent(A, pairs)
    E.verify()
    return A, DualStructureData.validated(A, S, unit), E


def group_weak_hopf(G: GroupTable, tol: Tolerance = DEFAULT_TOL
                    ) -> tuple["WeakHopfData", DualStructureData]:
    """C[G] as a Hopf algebra: Delta(e_g) = e_g (x) e_g, eps = 1."""
    A, dual, _ = group_algebra(G, tol)
    n = G.order
    Delta = np.zeros((n * n, n), dtype=complex)
    for g in range(n):
        Delta[g * n + g, g] = 1.0
    W = WeakHopfData(A, Delta, np.ones(n, dtype=complex), dual.S)
    return W, dual


# --- table algebras and association schemes ---

@dataclass(frozen=True)
class TableAlgebraData:
    """Standard basis b_0 = 1, b_1, ..., with real nonnegative structure
    constants and a basis involution i -> i*."""

    p: np.ndarray             # p[i, j, k] real, >= 0
    involution: np.ndarray    # permutation i -> i*

    @property
    def rank(self) -> int:
        return self.p.shape[0]

    def kappa(self, i: int) -> float:
        """p_{i i*}^0, the valency-style normalizer for basis element i."""
        return float(self.p[i, self.involution[i], 0].real)

    @staticmethod
    def validated(p, involution, eps: float = 1e-9) -> "TableAlgebraData":
        p = np.asarray(p, dtype=float)
        star = np.asarray(involution, dtype=int)
        r = p.shape[0]
        if p.shape != (r, r, r):
            raise AxiomViolation("structure constants must be rank^3")
        if not np.array_equal(np.sort(star), np.arange(r)):
            raise AxiomViolation("basis involution is not a permutation")
        if not np.array_equal(star[star], np.arange(r)):
            raise AxiomViolation("basis involution does not square to identity")
        if p.min() < -eps:
            raise AxiomViolation("negative structure constant")
        # b_0 is the unit
        if np.abs(p[0] - np.eye(r)).max() > eps or \
                np.abs(p[:, 0, :] - np.eye(r)).max() > eps:
            raise AxiomViolation("b_0 is not the identity")
        for i in range(r):
            for j in range(r):
                want = 0.0 if j != star[i] else p[i, star[i], 0]
                if abs(p[i, j, 0] - want) > eps:
                    raise AxiomViolation(
                        "coefficient of b_0 in b_i b_j must vanish unless j = i*")
            if p[i, star[i], 0] <= eps:
                raise AxiomViolation(f"p_(i i*)^0 must be positive, i = {i}")
        return TableAlgebraData(p, star)


def table_algebra(T: TableAlgebraData,
                  tol: Tolerance = DEFAULT_TOL
                  ) -> tuple[FDStarAlgebra, AntiAlgebraMap,
                             "SeparabilityIdempotent", np.ndarray]:
    """The table algebra with (b_i)* = b_{i*}, the linear antipode
    S(b_i) = b_{i*}, the separability idempotent
    E = sum_i (1/p_(i i*)^0) b_{i*} (x) b_i v^{-1} and its central element
    v = sum_i (1/p_(i i*)^0) b_{i*} b_i."""
    from .algebra import (SeparabilityIdempotent, central_positive_invertible,
                          check_cstar)
    r = T.rank
    sigma = np.zeros((r, r), dtype=complex)
    sigma[T.involution, np.arange(r)] = 1.0
    unit = np.zeros(r, dtype=complex)
    unit[0] = 1.0
    A = FDStarAlgebra(T.p.astype(complex), unit, sigma, tol)
    S = AntiAlgebraMap.validated(A, sigma.copy())
    v = table_central_element(T)
    G, ok = check_cstar(A)
    if not ok or not central_positive_invertible(A, v, G):
        raise AxiomViolation("v is not central positive invertible")
    vinv = A.inverse(v)
    pairs = []
    for i in range(r):
        x = np.zeros(r, dtype=complex)
        x[T.involution[i]] = 1.0 / T.kappa(i)
        y = np.zeros(r, dtype=complex)
        y[i] = 1.0
        pairs.append((x, A.mult(y, vinv)))
    E = SeparabilityIdempotent(A, pairs)
    E.verify()
    return A, S, E, v


def table_central_element(T: TableAlgebraData) -> np.ndarray:
    """v = sum_i (1 / p_(i i*)^0) b_{i*} b_i, central positive invertible."""
    r = T.rank
    v = np.zeros(r, dtype=complex)
    for i in range(r):
        v += T.p[T.involution[i], i, :] / T.kappa(i)
    return v


def table_indicator(T: TableAlgebraData, chi: np.ndarray,
                    tau: np.ndarray | None = None,
                    eps_round: float = 1e-6) -> tuple[int, complex]:
    """Indicator of the irreducible character chi of a table algebra:
    sigma = sum_i chi(b_tau(i) b_i) / p_(i i*)^0 divided by chi(v)/chi(1);
    tau is an optional involution of the index set (default identity)."""
    r = T.rank
    chi = np.asarray(chi, dtype=complex)
    if tau is None:
        tau = np.arange(r)
    raw = 0.0 + 0.0j
    for i in range(r):
        raw += (chi @ T.p[tau[i], i, :]) / T.kappa(i)
    v = table_central_element(T)
    unit = np.zeros(r)
    unit[0] = 1.0
    norm = (chi @ v) / (chi @ unit)
    sigma = complex(raw / norm)
    s = int(round(sigma.real))
    if abs(sigma - s) > eps_round or s not in (-1, 0, 1):
        raise AxiomViolation(f"table indicator {sigma} is not in {{-1, 0, 1}}")
    return s, complex(raw)


def scheme_from_matrices(mats: list[np.ndarray]) -> TableAlgebraData:
    """Intersection numbers of an association scheme given by its 0/1
    adjacency matrices (class 0 must be the identity)."""
    mats = [np.asarray(m, dtype=int) for m in mats]
    r = len(mats)
    n = mats[0].shape[0]
    total = sum(mats)
    if not np.array_equal(total, np.ones((n, n), dtype=int)):
        raise AxiomViolation("adjacency matrices do not partition the pairs")
    if not np.array_equal(mats[0], np.eye(n, dtype=int)):
        raise AxiomViolation("class 0 is not the identity relation")
    star = np.full(r, -1, dtype=int)
    for i in range(r):
        for j in range(r):
            if np.array_equal(mats[i].T, mats[j]):
                star[i] = j
                break
        if star[i] < 0:
            raise AxiomViolation(f"transpose of class {i} is not a class")
    p = np.zeros((r, r, r), dtype=float)
    for i in range(r):
        for j in range(r):
            prod = mats[i] @ mats[j]
            for k in range(r):
                x, y = np.argwhere(mats[k])[0]
                p[i, j, k] = prod[x, y]
                if np.abs(prod * mats[k] - p[i, j, k] * mats[k]).max() != 0:
                    raise AxiomViolation(
                        f"product of classes {i}, {j} is not constant on class {k}")
    return TableAlgebraData.validated(p, star)


# --- groupoids ---

@dataclass(frozen=True)
class GroupoidData:
    """Finite groupoid: arrows with source and target objects, partial
    composition, identities and inverses derived from the data."""

    n_objects: int
    src: np.ndarray
    tgt: np.ndarray
    compose: dict            # (a, b) -> a after b, defined iff src[a] == tgt[b]
    identity: np.ndarray     # identity arrow at each object
    inverse: np.ndarray

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @staticmethod
    def validated(n_objects: int, arrows, compose_triples) -> "GroupoidData":
        src = np.array([a[0] for a in arrows], dtype=int)
        tgt = np.array([a[1] for a in arrows], dtype=int)
        n = len(src)
        comp = {}
        for a, b, ab in compose_triples:
            comp[(a, b)] = ab
        for a in range(n):
            for b in range(n):
                defined = (a, b) in comp
                if defined != (src[a] == tgt[b]):
                    raise BadGroupoid(
                        f"composability of ({a}, {b}) disagrees with src/tgt")
                if defined:
                    ab = comp[(a, b)]
                    if src[ab] != src[b] or tgt[ab] != tgt[a]:
                        raise BadGroupoid(f"composite of ({a}, {b}) has wrong ends")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if (a, b) in comp and (b, c) in comp:
                        if comp[(comp[(a, b)], c)] != comp[(a, comp[(b, c)])]:
                            raise BadGroupoid("composition is not associative")
        ident = np.full(n_objects, -1, dtype=int)
        for e in range(n):
            if src[e] == tgt[e] and all(
                    comp.get((e, b)) == b for b in range(n) if tgt[b] == src[e]):
                if all(comp.get((a, e)) == a for a in range(n) if src[a] == src[e]):
                    ident[src[e]] = e
        if (ident < 0).any():
            raise BadGroupoid("some object has no identity arrow")
        inv = np.full(n, -1, dtype=int)
        for a in range(n):
            for b in range(n):
                if comp.get((a, b)) == ident[tgt[a]] and \
                        comp.get((b, a)) == ident[src[a]]:
                    inv[a] = b
        if (inv < 0).any():
            raise BadGroupoid("some arrow has no inverse")
        return GroupoidData(n_objects, src, tgt, comp, ident, inv)


def pair_groupoid(m: int) -> GroupoidData:
    """Arrows (i, j) : j -> i for all pairs of m objects."""
    arrows = [(j, i) for i in range(m) for j in range(m)]  # (src, tgt)
    idx = {(i, j): i * m + j for i in range(m) for j in range(m)}

    def a_of(k):
        return divmod(k, m)  # (tgt, src)... index k = i*m + j means arrow j -> i

    triples = []
    for i in range(m):
        for j in range(m):
            for k in range(m):
                # (i <- j) after (j <- k) = (i <- k)
                triples.append((idx[(i, j)], idx[(j, k)], idx[(i, k)]))
    arrows_sd = [(j, i) for i in range(m) for j in range(m)]
    return GroupoidData.validated(m, arrows_sd, triples)


def disjoint_union_groupoid(groups: list[GroupTable]) -> GroupoidData:
    """One object per group, arrows the group elements."""
    n_obj = len(groups)
    arrows = []
    triples = []
    offs = []
    off = 0
    for o, G in enumerate(groups):
        offs.append(off)
        arrows.extend([(o, o)] * G.order)
        for i in range(G.order):
            for j in range(G.order):
                triples.append((off + i, off + j, off + G.table[i, j]))
        off += G.order
    return GroupoidData.validated(n_obj, arrows, triples)


# --- weak Hopf algebras ---

@dataclass
class WeakHopfData:
    """A *-algebra with comultiplication, counit and antipode.  Delta is
    stored as an n^2 x n matrix whose column i is vec(Delta(e_i)) with
    tensor index (j, k) flattened to j*n + k."""

    algebra: FDStarAlgebra
    Delta: np.ndarray
    counit: np.ndarray
    S: AntiAlgebraMap

    def __post_init__(self):
        self._validate()

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def delta_tensor(self) -> np.ndarray:
        n = self.dim
        return self.Delta.T.reshape(n, n, n)  # Dt[i, j, k]

    def delta_of(self, x: np.ndarray) -> np.ndarray:
        """Delta(x) as an n x n coefficient matrix."""
        n = self.dim
        return (self.Delta @ x).reshape(n, n)

    def _validate(self):
        A, n = self.algebra, self.dim
        eps = A.tol.eps_eig * max(1, n)
        Dt = self.delta_tensor()
        coas1 = np.einsum("imc,mab->iabc", Dt, Dt)
        coas2 = np.einsum("iam,mbc->iabc", Dt, Dt)
        if np.abs(coas1 - coas2).max(initial=0.0) > eps:
            raise AxiomViolation("comultiplication is not coassociative")
        eye = np.eye(n)
        left = np.einsum("j,ijk->ik", self.counit, Dt)
        right = np.einsum("k,ijk->ij", self.counit, Dt)
        if np.abs(left - eye).max() > eps or np.abs(right - eye).max() > eps:
            raise AxiomViolation("counit law fails")
        c = A.structure
        lhs = np.einsum("ijk,kab->ijab", c, Dt)
        rhs = np.einsum("ipq,jrs,pra,qsb->ijab", Dt, Dt, c, c, optimize=True)
        if np.abs(lhs - rhs).max(initial=0.0) > eps * 10:
            raise AxiomViolation("comultiplication is not multiplicative")

    def counit_target_maps(self) -> tuple[np.ndarray, np.ndarray]:
        """Matrices of eps_L(a) = eps(1_(1) a) 1_(2) and
        eps_R(a) = 1_(1) eps(a 1_(2))."""
        A, n = self.algebra, self.dim
        D1 = self.delta_of(A.unit)           # D1[j, k]
        eps_jk = np.einsum("jik,k->ji", A.structure, self.counit)    # eps(e_j e_i)
        EL = np.einsum("jk,ji->ki", D1, eps_jk)
        ER = np.einsum("jk,ik->ji", D1, eps_jk)
        return EL, ER

    def haar_integral(self) -> np.ndarray:
        """The unique two-sided Haar integral: eps_L(Lam) = eps_R(Lam) = 1,
        a Lam = eps_L(a) Lam and Lam a = Lam eps_R(a) for all a."""
        A, n = self.algebra, self.dim
        EL, ER = self.counit_target_maps()
        rows = [EL, ER]
        rhs = [A.unit, A.unit]
        for i in range(n):
            e = A.basis_element(i)
            L = A.left_mult(e) - A.left_mult(EL @ e)
            R = A.right_mult(e) - A.right_mult(ER @ e)
            rows.append(L)
            rhs.append(np.zeros(n))
            rows.append(R)
            rhs.append(np.zeros(n))
        M = np.vstack(rows)
        b = np.concatenate(rhs)
        lam, *_ = np.linalg.lstsq(M, b, rcond=None)
        resid = np.abs(M @ lam - b).max(initial=0.0)
        if resid > A.tol.eps_eig * 100:
            raise NoHaar(f"Haar integral system is inconsistent, residual {resid:.3e}")
        ker = nullspace(M, A.tol)
        if ker.shape[1] > 0:
            raise NonUniqueHaar("Haar integral is not unique")
        return lam

    def indicator(self, V, g: np.ndarray,
                  tau: np.ndarray | None = None) -> tuple[int, complex]:
        """nu_tau(V) = (chi(g)/chi(1)) * chi(tau(Lam_(1)) Lam_(2)); tau
        defaults to the identity (untwisted indicator)."""
        A, n = self.algebra, self.dim
        lam = self.haar_integral()
        dl = self.delta_of(lam)
        if tau is not None:
            dl = tau @ dl   # acts on the first leg
        z = np.einsum("jk,jkl->l", dl, A.structure)
        chi = V.character()
        val = complex((chi @ g) / (chi @ A.unit) * (chi @ z))
        s = int(round(val.real))
        if abs(val - s) > A.tol.eps_round or s not in (-1, 0, 1):
            raise AxiomViolation(f"weak Hopf indicator {val} not in {{-1, 0, 1}}")
        return s, val


def check_involution_perm(G: GroupTable, perm) -> np.ndarray:
    """An involutive automorphism of G given as a permutation of elements."""
    p = np.asarray(perm, dtype=int)
    n = G.order
    if not np.array_equal(np.sort(p), np.arange(n)):
        raise NotInvolution("not a permutation")
    if not np.array_equal(p[p], np.arange(n)):
        raise NotInvolution("does not square to the identity")
    for i in range(n):
        for j in range(n):
            if p[G.table[i, j]] != G.table[p[i], p[j]]:
                raise NotInvolution("not a group automorphism")
    return p


def groupoid_weak_hopf(Gd: GroupoidData,
                       tol: Tolerance = DEFAULT_TOL
                       ) -> tuple[WeakHopfData, DualStructureData]:
    """Groupoid algebra with Delta(e_a) = e_a (x) e_a, eps = 1,
    S(e_a) = e_{a^{-1}}; the unit is the sum of object identities."""
    n = Gd.n_arrows
    c = np.zeros((n, n, n), dtype=complex)
    for (a, b), ab in Gd.compose.items():
        c[a, b, ab] = 1.0
    unit = np.zeros(n, dtype=complex)
    unit[Gd.identity] = 1.0
    sigma = np.zeros((n, n), dtype=complex)
    sigma[Gd.inverse, np.arange(n)] = 1.0
    A = FDStarAlgebra(c, unit, sigma, tol)
    S = AntiAlgebraMap.validated(A, sigma.copy())
    Delta = np.zeros((n * n, n), dtype=complex)
    for a in range(n):
        Delta[a * n + a, a] = 1.0
    counit = np.ones(n, dtype=complex)
    W = WeakHopfData(A, Delta, counit, S)
    return W, DualStructureData.validated(A, S, unit)


def drinfeld_double(G: GroupTable,
                    tol: Tolerance = DEFAULT_TOL
                    ) -> tuple[WeakHopfData, DualStructureData]:
    """D(G) on the basis delta_g (x) h, index g * |G| + h."""
    m = G.order
    n = m * m
    t, inv = G.table, G.inverse

    def idx(g, h):
        return g * m + h

    c = np.zeros((n, n, n), dtype=complex)
    for g in range(m):
        for h in range(m):
            for h2 in range(m):
                # (delta_g x h)(delta_{g'} x h') nonzero iff g = h g' h^{-1}
                g2 = t[t[inv[h], g], h]
                c[idx(g, h), idx(g2, h2), idx(g, t[h, h2])] = 1.0
    unit = np.zeros(n, dtype=complex)
    for g in range(m):
        unit[idx(g, 0)] = 1.0
    sigma = np.zeros((n, n), dtype=complex)
    S_mat = np.zeros((n, n), dtype=complex)
    for g in range(m):
        for h in range(m):
            ghg = t[t[inv[h], g], h]            # h^{-1} g h
            sigma[idx(ghg, inv[h]), idx(g, h)] = 1.0
            sginv = t[t[inv[h], inv[g]], h]     # h^{-1} g^{-1} h
            S_mat[idx(sginv, inv[h]), idx(g, h)] = 1.0
    A = FDStarAlgebra(c, unit, sigma, tol)
    S = AntiAlgebraMap.validated(A, S_mat)
    Delta = np.zeros((n * n, n), dtype=complex)
    for g in range(m):
        for h in range(m):
            for a in range(m):
                b = t[inv[a], g]                # ab = g
                Delta[idx(a, h) * n + idx(b, h), idx(g, h)] = 1.0
    counit = np.zeros(n, dtype=complex)
    for h in range(m):
        counit[idx(0, h)] = 1.0
    W = WeakHopfData(A, Delta, counit, S)
    return W, DualStructureData.validated(A, S, unit)


def haar_integral(W: WeakHopfData) -> np.ndarray:
    """The unique two-sided Haar integral of W (linear solve)."""
    return W.haar_integral()


def weak_hopf_indicator(W: WeakHopfData, V,
                        g: np.ndarray | None = None) -> tuple[int, complex]:
    """nu(V) = (chi(g)/chi(1)) chi(Lam_(1) Lam_(2)); g defaults to the
    canonical distinguished element of the antipode."""
    if g is None:
        from .indicators import canonical_g
        from .reps import decompose, regular_representation
        parts = decompose(regular_representation(W.algebra))
        g = canonical_g(W.algebra, W.S, [X for X, _ in parts]).g
    return W.indicator(V, g)


def twisted_indicator(G: GroupTable, tau, V) -> tuple[int, complex]:
    """Twisted indicator sigma_tau(V) = (1/|G|) sum_h chi(tau(h) h) of an
    involutive automorphism tau, computed through the Hopf-algebra Haar
    integral of C[G]; V must be a representation of the group algebra."""
    perm = check_involution_perm(G, tau)
    if V.algebra.dim != G.order:
        raise BadGroup("representation does not live over C[G]")
    W, dual = group_weak_hopf(G, V.algebra.tol)
    n = G.order
    tau_mat = np.zeros((n, n))
    tau_mat[perm, np.arange(n)] = 1.0
    return W.indicator(V, dual.g, tau_mat)
