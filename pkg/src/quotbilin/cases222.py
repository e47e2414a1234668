"""The complete two-points case study: dimension-2 pairing points over a line.

Named tensors and degeneration families for the five module-type cases,
point classification by the isomorphism types of the two source modules, and
the exhaustive census over a small prime field.

Two additional split-mixed labels cover pairs (tuple-of-points, semisimple
double point): such points are valid (the tensor product localizes onto the
common support) even though only one source is a tuple of points.  Their
tensors are the non-concise rank-2 types, so nothing new arises.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .exactalg import (
    GF,
    Field,
    Matrix,
    ParamTensor,
    UniPoly,
)
from .modcore import (
    FramedModule,
    annihilator_algebra_dim,
    support_univariate,
    tensor_over_S,
    validate_framed,
)
from .bilin import BilinPoint, factor_membership_detail, validate_bilin
from .quot import InfeasibleEnumeration, NonSplitSupport
from .tensorlab import Classification222, Tensor3, classify_2x2x2, tensor_from_bilin


class ModuleType(Enum):
    TUPLE = "tuple-of-points"
    JORDAN = "double-point-cyclic"
    SEMISIMPLE = "double-point-semisimple"
    NON_SPLIT = "non-split"


class CaseLabel(Enum):
    MAIN_SPLIT = "MAIN_SPLIT"
    CYCLIC_NILPOTENT = "CYCLIC_NILPOTENT"
    MIXED_12 = "MIXED_12"
    MIXED_21 = "MIXED_21"
    TOTALLY_DEGENERATE = "TOTALLY_DEGENERATE"
    SPLIT_MIXED_12 = "SPLIT_MIXED_12"
    SPLIT_MIXED_21 = "SPLIT_MIXED_21"
    NON_SPLIT = "NON_SPLIT"


_PAIR_LABELS = {
    (ModuleType.TUPLE, ModuleType.TUPLE): CaseLabel.MAIN_SPLIT,
    (ModuleType.JORDAN, ModuleType.JORDAN): CaseLabel.CYCLIC_NILPOTENT,
    (ModuleType.JORDAN, ModuleType.SEMISIMPLE): CaseLabel.MIXED_12,
    (ModuleType.SEMISIMPLE, ModuleType.JORDAN): CaseLabel.MIXED_21,
    (ModuleType.SEMISIMPLE, ModuleType.SEMISIMPLE): CaseLabel.TOTALLY_DEGENERATE,
    (ModuleType.TUPLE, ModuleType.SEMISIMPLE): CaseLabel.SPLIT_MIXED_12,
    (ModuleType.SEMISIMPLE, ModuleType.TUPLE): CaseLabel.SPLIT_MIXED_21,
}


# -- named tensors and families ------------------------------------------------

_NAMED = ("mu1", "mu2", "mu3", "mu4", "mu2_t", "mu3_t", "mu4_t", "pi5_sample")


def named_tensor(name: str, field: Field):
    """Catalogue of the dimension-2 case tensors and their degeneration
    families (entries polynomial in t for the _t names).

    mu1: split multiplication (unit) tensor; mu2: nilpotent cyclic
    multiplication, rank 3; mu3/mu4: the non-concise rank-2 pairings;
    pi5_sample: one totally degenerate pairing matrix.
    """
    one = field.one()

    def tens(entries):
        return Tensor3.from_entries(field, (2, 2, 2), entries)

    def fam(entries):
        coeffs = [UniPoly.zero(field)] * 8
        t = ParamTensor(field, (2, 2, 2), coeffs)
        for (i, j, k), poly in entries.items():
            t.coeffs[(i * 2 + j) * 2 + k] = poly
        return t

    c1 = UniPoly.const(field, one)
    ct = UniPoly.x(field)
    if name == "mu1":
        return tens({(0, 0, 0): one, (1, 1, 1): one})
    if name == "mu2":
        return tens({(0, 0, 0): one, (0, 1, 1): one, (1, 0, 1): one})
    if name == "mu3":
        return tens({(0, 0, 0): one, (0, 1, 1): one})
    if name == "mu4":
        return tens({(0, 0, 0): one, (1, 0, 1): one})
    if name == "mu2_t":
        return fam({(0, 0, 0): c1, (0, 1, 1): c1, (1, 0, 1): c1, (1, 1, 1): ct})
    if name == "mu3_t":
        return fam({(0, 0, 0): c1, (0, 1, 1): c1, (1, 1, 1): ct})
    if name == "mu4_t":
        return fam({(0, 0, 0): c1, (1, 0, 1): c1, (1, 1, 1): ct})
    if name == "pi5_sample":
        return tens({(0, 0, 0): one, (0, 1, 1): one})
    raise ValueError(f"unknown tensor name {name!r}; known: {', '.join(_NAMED)}")


def limit_target_name(family_name: str) -> str:
    if not family_name.endswith("_t"):
        raise ValueError(f"{family_name!r} is not a family name")
    return family_name[:-2]


@dataclass
class LimitSample:
    t: object
    classification: Classification222


@dataclass
class LimitReport:
    base_matches: bool
    samples: list[LimitSample]

    @property
    def ok(self) -> bool:
        return self.base_matches


def verify_limit(family: ParamTensor, target: Tensor3, samples) -> LimitReport:
    """Check a degeneration family: exact equality with the target at t = 0,
    plus the classification of each sampled fiber at t != 0."""
    field = family.field
    at0 = family.evaluate(field.zero())
    base = at0 == target
    out = []
    for t0 in samples:
        fiber = family.evaluate(t0)
        out.append(LimitSample(t=t0, classification=classify_2x2x2(fiber)))
    return LimitReport(base_matches=base, samples=out)


# -- point classification --------------------------------------------------------

@dataclass
class PointClassification:
    label: CaseLabel
    m1_type: ModuleType
    m2_type: ModuleType
    m3_type: ModuleType
    tensor: Classification222
    forced_ok: bool


def module_type_222(m: FramedModule) -> ModuleType:
    """Isomorphism type of a dimension-2 univariate module via support
    multiplicity and the dimension of the algebra generated by the action."""
    supp = support_univariate(m)
    if not supp.split:
        return ModuleType.NON_SPLIT
    if len(supp.points) == 2:
        return ModuleType.TUPLE
    alg = annihilator_algebra_dim(m)
    return ModuleType.JORDAN if alg == 2 else ModuleType.SEMISIMPLE


def classify_point_222(b: BilinPoint) -> PointClassification:
    """Case label of a valid (2,2,2; 2,2) pairing point over a line.

    Labels follow the isomorphism types of (M1, M2); the type of M3 is
    computed too and the forced consequences are verified: both MIXED cases
    force the semisimple target, the nilpotent-cyclic case forces the
    cyclic target, and the main split case forces all three modules equal
    with an isomorphism pairing.
    """
    if b.n != 1 or (b.m1.d, b.m2.d, b.d3) != (2, 2, 2):
        raise ValueError("classification needs n=1 and all dimensions 2")
    if not validate_bilin(b).ok:
        raise ValueError("invalid pairing point")
    t1 = module_type_222(b.m1)
    t2 = module_type_222(b.m2)
    m3 = b.target_module()
    t3 = module_type_222(m3)
    if ModuleType.NON_SPLIT in (t1, t2, t3):
        raise NonSplitSupport("module support does not split over the field")
    label = _PAIR_LABELS[(t1, t2)]
    tensor = classify_2x2x2(tensor_from_bilin(b))
    forced = True
    if label in (CaseLabel.MIXED_12, CaseLabel.MIXED_21,
                 CaseLabel.SPLIT_MIXED_12, CaseLabel.SPLIT_MIXED_21,
                 CaseLabel.TOTALLY_DEGENERATE):
        forced = forced and t3 == ModuleType.SEMISIMPLE
    if label == CaseLabel.CYCLIC_NILPOTENT:
        forced = forced and t3 == ModuleType.JORDAN
    if label == CaseLabel.MAIN_SPLIT:
        forced = forced and t3 == ModuleType.TUPLE
        supp1 = sorted(map(_supp_key, support_univariate(b.m1).points))
        supp2 = sorted(map(_supp_key, support_univariate(b.m2).points))
        supp3 = sorted(map(_supp_key, support_univariate(m3).points))
        forced = forced and supp1 == supp2 == supp3
    return PointClassification(label=label, m1_type=t1, m2_type=t2, m3_type=t3,
                               tensor=tensor, forced_ok=forced)


def _supp_key(point_mult):
    v, m = point_mult
    return (str(v), m)


# -- census ------------------------------------------------------------------------

@dataclass
class Census:
    q: int
    counts: dict
    quot_classes: int
    total_points: int
    border_rank_3: int
    forced_failures: int

    def rows(self) -> list[tuple[str, str, int]]:
        out = []
        for (label, tlabel), c in sorted(self.counts.items()):
            out.append((label, tlabel, c))
        return out


def _all_matrices(field, rows, cols):
    p = field.characteristic
    for ents in itertools.product(range(p), repeat=rows * cols):
        yield Matrix(field, rows, cols, list(ents))


def _gl2(field) -> list[Matrix]:
    out = []
    for m in _all_matrices(field, 2, 2):
        if m.is_invertible():
            out.append(m)
    return out


def enumerate_quot_classes_22(q: int) -> list[FramedModule]:
    """Representatives of rank-2, dimension-2 framed-module classes over F_q.

    Classes are orbits of valid (X, G) under simultaneous change of basis;
    the canonical representative is the minimum orbit encoding.
    """
    field = GF(q)
    gl2 = [(g, g.inverse()) for g in _gl2(field)]
    seen = set()
    reps = []
    for X in _all_matrices(field, 2, 2):
        for G in _all_matrices(field, 2, 2):
            mod = FramedModule(1, 2, 2, (X,), G)
            if not validate_framed(mod).ok:
                continue
            key = min((((g * X * gi).key(), (g * G).key()) for g, gi in gl2))
            if key in seen:
                continue
            seen.add(key)
            reps.append(mod)
    return reps


def _invariant_subspaces(actions, dim: int, sub_dim: int, field) -> list[list[tuple]]:
    """All sub_dim-dimensional invariant subspaces of F_q^dim, as RREF row
    bases."""
    if sub_dim == 0:
        return [[]]
    p = field.characteristic
    out = []
    for pivots in itertools.combinations(range(dim), sub_dim):
        free_positions = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, dim):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = [[field.zero()] * dim for _ in range(sub_dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = field.one()
            for (r, c), v in zip(free_positions, values):
                rows[r][c] = field.from_int(v)
            basis = [tuple(r) for r in rows]
            if _is_invariant(actions, basis, field):
                out.append(basis)
    return out


def _is_invariant(actions, basis, field) -> bool:
    from .exactalg import in_span
    for a in actions:
        for v in basis:
            if not in_span(basis, a.matvec(list(v)), field):
                return False
    return True


def enumerate_222(q: int, cap: int = 200_000) -> Census:
    """Exhaustive census of (2,2,2; 2,2) pairing points over F_q.

    Points are triples of kernels: a pair of framed-module classes plus a
    choice of invariant corank-2 subspace of their tensor product (the
    kernel of the pairing).  This enumerates exactly the solvable pairing
    lifts deduplicated by kernel equality.  Every enumerated point must
    validate; the census asserts no border-rank-3 tensor and every forced
    consequence of the case analysis.
    """
    if q not in (2, 3):
        raise InfeasibleEnumeration("census is supported for q in {2, 3}")
    field = GF(q)
    reps = enumerate_quot_classes_22(q)
    if len(reps) ** 2 > cap:
        raise InfeasibleEnumeration(f"{len(reps)}^2 pairs exceeds cap {cap}")
    counts: dict = {}
    total = 0
    border3 = 0
    forced_failures = 0
    for m1 in reps:
        for m2 in reps:
            prod = tensor_over_S(m1, m2)
            if prod.dim12 < 2:
                continue
            sub_dim = prod.dim12 - 2
            for basis in _invariant_subspaces(prod.actions, prod.dim12, sub_dim, field):
                point = _assemble_point(m1, m2, prod, basis, field)
                val = validate_bilin(point)
                assert val.ok, "census point failed validation"
                try:
                    cls = classify_point_222(point)
                    label = cls.label.value
                    tlabel = cls.tensor.label
                    if not cls.forced_ok:
                        forced_failures += 1
                    if cls.tensor.border_rank >= 3:
                        border3 += 1
                except NonSplitSupport:
                    label = CaseLabel.NON_SPLIT.value
                    tlabel = classify_2x2x2(tensor_from_bilin(point)).label
                counts[(label, tlabel)] = counts.get((label, tlabel), 0) + 1
                total += 1
    return Census(q=q, counts=counts, quot_classes=len(reps),
                  total_points=total, border_rank_3=border3,
                  forced_failures=forced_failures)


def _assemble_point(m1, m2, prod, kernel_basis, field) -> BilinPoint:
    """Pairing point with kernel the given subspace of the tensor product."""
    from .exactalg import quotient_map
    dim12 = prod.dim12
    qmap, section = quotient_map(kernel_basis, field, dim12)
    d3 = qmap.rows
    Z = tuple(qmap * a * section for a in prod.actions)
    pihat = qmap * prod.q
    return BilinPoint(m1=m1, m2=m2, d3=d3, Z=Z, pihat=pihat)


def census_cross_check(q: int, pair_sample: int = 4) -> bool:
    """Validate the census enumeration against the direct target loop.

    For a few module pairs, enumerate every valid rank-4 target framed
    module over F_q, run the membership solver, deduplicate surviving
    points by pairing kernel, and compare with the subspace count.
    """
    field = GF(q)
    reps = enumerate_quot_classes_22(q)
    pairs = []
    for m1 in reps:
        for m2 in reps:
            prod = tensor_over_S(m1, m2)
            if prod.dim12 >= 2:
                pairs.append((m1, m2, prod))
    step = max(1, len(pairs) // pair_sample)
    chosen = pairs[::step][:pair_sample]
    for m1, m2, prod in chosen:
        expected = len(_invariant_subspaces(prod.actions, prod.dim12,
                                            prod.dim12 - 2, field))
        found = set()
        for Z in _all_matrices(field, 2, 2):
            for F3 in _all_matrices(field, 2, 4):
                target = FramedModule(1, 2, 4, (Z,), F3)
                if not validate_framed(target).ok:
                    continue
                rep = factor_membership_detail(m1, m2, target)
                if rep.point is None:
                    continue
                ker = _pairing_kernel_key(rep.point, prod, field)
                found.add(ker)
        if len(found) != expected:
            return False
    return True


def _pairing_kernel_key(point: BilinPoint, prod, field) -> tuple:
    """Canonical key of ker(pairing) as a subspace of the tensor product."""
    from .exactalg import rank_and_kernel
    composed = point.pihat * prod.section
    _, kernel = rank_and_kernel(composed)
    if not kernel:
        return ("full",)
    m = Matrix.from_rows(field, [list(v) for v in kernel])
    rref, _ = m.rref()
    return tuple(rref.entries)
