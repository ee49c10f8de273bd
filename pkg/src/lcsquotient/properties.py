"""Randomized property suites, shared by ``selftest`` and the test suite.

Every suite takes a seeded `random.Random` and a case count and returns a
`CheckReport`, with one check per property. A failing check's detail holds
the first counterexample found.
"""

from __future__ import annotations

import itertools
import math
import random
from collections.abc import Callable, Iterable
from enum import StrEnum

import structlog

from .exterior import (
    ExtElement,
    alt2_basis,
    lambda_basis,
    pairing_matrix,
    power,
    theta,
    theta_divided,
    wedge,
)
from .fano import rank1_det_formula, rank1_det_identity
from .lattice import (
    IntMatrix,
    SmithForm,
    cokernel,
    det,
    is_unimodular,
    kernel_basis,
    rank,
    snf,
)
from .nilpotent import (
    Class2Element,
    GroupPresentation,
    eval_word,
    exterior_product,
    gamma2_mod_gamma3,
    nf_commutator,
    nf_inverse,
    nf_mul,
    nf_power,
)
from .reports import CheckReport
from .second_quotient import (
    SpaceData,
    cup_matrix,
    ker_cup_dim,
    ker_cup_dim_mod_p,
    mu_matrix,
    rational_rank,
    second_lcs_quotient,
)

__all__ = [
    "cokernel_invariance_suite",
    "divided_power_suite",
    "duality_suite",
    "exterior_suite",
    "kernel_suite",
    "nilpotent_suite",
    "pd_pairing_suite",
    "random_cup_space",
    "random_matrix",
    "random_presentation",
    "random_space",
    "random_unimodular",
    "random_word",
    "rank1_suite",
    "run_selftest",
    "snf_suite",
    "TietzeMove",
    "tietze_move",
    "tietze_suite",
]

logger = structlog.get_logger(__name__)


def _first_failure[T](
    cases: Iterable[T], holds: Callable[[T], bool]
) -> T | None:
    for case in cases:
        if not holds(case):
            return case
    return None


def _record(
    report: CheckReport, name: str, count: int, failure: object | None
) -> None:
    if failure is None:
        report.check(name, passed=True, detail=f"{count} cases")
    else:
        report.check(name, passed=False, detail=f"counterexample {failure!r}")


# Generators


def random_matrix(
    rng: random.Random,
    rows: int,
    cols: int,
    *,
    bound: int = 5,
    deficient: bool = False,
) -> IntMatrix:
    """A random matrix with entries in [−bound, bound].

    With ``deficient`` the matrix is a product through a smaller inner
    dimension, so its rank is usually below min(rows, cols).
    """
    if deficient and min(rows, cols) > 1:
        inner = rng.randint(1, min(rows, cols) - 1)
        left = random_matrix(rng, rows, inner, bound=2)
        right = random_matrix(rng, inner, cols, bound=2)
        return left @ right
    table = [
        [rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)
    ]
    return IntMatrix.from_rows(table, cols=cols)


def random_unimodular(
    rng: random.Random, n: int, *, steps: int | None = None
) -> IntMatrix:
    """A random product of elementary integer row operations."""
    m = IntMatrix.identity(n).tolist()
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        match rng.randrange(3):
            case 0:
                q = rng.choice([-2, -1, 1, 2])
                m[i] = [a + q * b for a, b in zip(m[i], m[j], strict=True)]
            case 1:
                m[i], m[j] = m[j], m[i]
            case _:
                m[i] = [-a for a in m[i]]
    return IntMatrix.from_rows(m, cols=n)


def random_space(
    rng: random.Random,
    *,
    max_h1_rank: int = 8,
    max_h2_rank: int = 10,
    bound: int = 5,
) -> SpaceData:
    """Random torsion-free space data given by a matrix of μ."""
    h1_rank = rng.randint(0, max_h1_rank)
    h2_rank = rng.randint(0, max_h2_rank)
    mu = random_matrix(
        rng,
        math.comb(h1_rank, 2),
        h2_rank,
        bound=bound,
        deficient=rng.random() < 0.3,
    )
    return SpaceData.from_mu("random", mu, h1_rank=h1_rank)


def random_cup_space(
    rng: random.Random,
    *,
    max_h1_rank: int = 8,
    max_h2_rank: int = 10,
    bound: int = 3,
) -> SpaceData:
    """Random torsion-free space data given by a cup product matrix.

    Each H² coordinate of the cup product is a skew form on H¹: a random
    one, sometimes plus the standard symplectic form, written in a random
    integral basis of H¹ as Pᵀ·ω·P.
    """
    h1_rank = rng.randint(0, max_h1_rank)
    h2_rank = rng.randint(0, max_h2_rank)
    pairs = alt2_basis(h1_rank)
    p = random_unimodular(rng, h1_rank)
    rows = []
    for _ in range(h2_rank):
        omega = IntMatrix.zeros(h1_rank, h1_rank).tolist()
        for i, j in pairs:
            x = rng.randint(-bound, bound)
            omega[i - 1][j - 1] = x
            omega[j - 1][i - 1] = -x
        if rng.random() < 0.5:
            for i in range(0, h1_rank - 1, 2):
                omega[i][i + 1] += 1
                omega[i + 1][i] -= 1
        form = p.transpose() @ IntMatrix.from_rows(omega, cols=h1_rank) @ p
        rows.append([form[i - 1, j - 1] for i, j in pairs])
    cup = IntMatrix.from_rows(rows, cols=len(pairs))
    return SpaceData.from_cup("random cup", cup, h1_rank=h1_rank)


def random_word(rng: random.Random, n: int, length: int) -> list[int]:
    """A random word of the given length in n generators, unreduced."""
    return [rng.choice([1, -1]) * rng.randint(1, n) for _ in range(length)]


def random_presentation(
    rng: random.Random,
    *,
    max_generators: int = 3,
    max_relators: int = 3,
    max_length: int = 6,
) -> GroupPresentation:
    """A random presentation within the given size bounds."""
    n = rng.randint(1, max_generators)
    return GroupPresentation(
        generators=n,
        relators=[
            random_word(rng, n, rng.randint(1, max_length))
            for _ in range(rng.randint(0, max_relators))
        ],
    )


def _random_element(rng: random.Random, m: int, degree: int) -> ExtElement:
    keys = lambda_basis(m, degree)
    picked = rng.sample(keys, min(len(keys), rng.randint(0, 4)))
    return ExtElement(
        m, degree, {key: rng.randint(-3, 3) for key in picked}
    )


def _inverse_word(word: list[int]) -> list[int]:
    return [-letter for letter in reversed(word)]


# Lattice suites


def snf_suite(
    rng: random.Random, count: int, *, max_dim: int = 40
) -> CheckReport:
    """Check U·A·V = D, unimodularity of U and V, the divisibility chain of
    D, and |Coker A| = |det A| on square nonsingular matrices.
    """
    report = CheckReport(title="Smith normal form")
    cases = []
    for _ in range(count):
        rows = rng.randint(0, max_dim)
        cols = rows if rng.random() < 0.4 else rng.randint(0, max_dim)
        cases.append(
            random_matrix(rng, rows, cols, deficient=rng.random() < 0.3)
        )
    forms = [(a, snf(a)) for a in cases]

    _record(
        report,
        "transform_identity",
        count,
        _first_failure(forms, lambda c: c[1].U @ c[0] @ c[1].V == c[1].D),
    )
    _record(
        report,
        "transforms_unimodular",
        count,
        _first_failure(
            forms,
            lambda c: abs(det(c[1].U)) == 1 and abs(det(c[1].V)) == 1,
        ),
    )

    def is_chain(case: tuple[IntMatrix, SmithForm]) -> bool:
        d = case[1].D
        off_diagonal = any(
            d[i, j] for i in range(d.rows) for j in range(d.cols) if i != j
        )
        diagonal = [d[i, i] for i in range(min(d.shape))]
        nonzero = [x for x in diagonal if x]
        return (
            not off_diagonal
            and all(x >= 0 for x in diagonal)
            and diagonal == nonzero + [0] * (len(diagonal) - len(nonzero))
            and all(b % a == 0 for a, b in itertools.pairwise(nonzero))
        )

    _record(
        report,
        "divisibility_chain",
        count,
        _first_failure(forms, is_chain),
    )

    square = [a for a in cases if a.is_square and det(a) != 0]
    _record(
        report,
        "cokernel_order_is_det",
        len(square),
        _first_failure(square, lambda a: cokernel(a).order == abs(det(a))),
    )
    return report


def cokernel_invariance_suite(
    rng: random.Random, count: int, *, max_dim: int = 10
) -> CheckReport:
    """Check that Coker(P·A·Q) ≅ Coker(A) for unimodular P and Q."""
    report = CheckReport(title="Cokernel invariance")
    cases = []
    for _ in range(count):
        rows, cols = rng.randint(0, max_dim), rng.randint(0, max_dim)
        cases.append(
            (
                random_matrix(rng, rows, cols, deficient=rng.random() < 0.5),
                random_unimodular(rng, rows),
                random_unimodular(rng, cols),
            )
        )
    _record(
        report,
        "unimodular_change_of_basis",
        count,
        _first_failure(
            cases, lambda c: cokernel(c[1] @ c[0] @ c[2]) == cokernel(c[0])
        ),
    )
    return report


def kernel_suite(
    rng: random.Random, count: int, *, max_dim: int = 10
) -> CheckReport:
    """Check that kernel_basis is annihilated and has the right size."""
    report = CheckReport(title="Kernel basis")
    cases = [
        random_matrix(
            rng,
            rng.randint(0, max_dim),
            rng.randint(0, max_dim),
            deficient=rng.random() < 0.5,
        )
        for _ in range(count)
    ]

    def annihilated(a: IntMatrix) -> bool:
        k = kernel_basis(a)
        return a @ k == IntMatrix.zeros(a.rows, k.cols)

    _record(
        report, "kernel_annihilated", count, _first_failure(cases, annihilated)
    )
    _record(
        report,
        "kernel_dimension",
        count,
        _first_failure(
            cases, lambda a: kernel_basis(a).cols == a.cols - rank(a)
        ),
    )
    # The columns extend to a basis of ℤ^cols, so the kernel is saturated.
    _record(
        report,
        "kernel_saturated",
        count,
        _first_failure(
            cases, lambda a: cokernel(kernel_basis(a)).torsion == ()
        ),
    )
    return report


def rank1_suite(
    rng: random.Random | None = None, count: int = 0, *, max_n: int = 8
) -> CheckReport:
    """Check det(E−I) = (−1)ⁿ(1−n) for n = 1..max_n.

    Given a generator, also check det(u·vᵀ − I) = (−1)ⁿ(1 − vᵀu) on
    ``count`` random signed vector pairs.
    """
    report = CheckReport(title="Rank-one determinant identity")
    sizes = range(1, max_n + 1)
    _record(
        report,
        "rank1_det_identity",
        len(sizes),
        _first_failure(sizes, lambda n: len(set(rank1_det_identity(n))) == 1),
    )
    if rng is None or count == 0:
        return report
    pairs = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        pairs.append(
            (
                [rng.randint(-4, 4) for _ in range(n)],
                [rng.randint(-4, 4) for _ in range(n)],
            )
        )
    _record(
        report,
        "rank1_det_formula",
        count,
        _first_failure(
            pairs, lambda c: len(set(rank1_det_formula(*c))) == 1
        ),
    )
    return report


# Exterior algebra suites


def exterior_suite(
    rng: random.Random, count: int, *, max_rank: int = 6
) -> CheckReport:
    """Check graded anticommutativity and associativity of the wedge."""
    report = CheckReport(title="Exterior algebra")
    cases = []
    for _ in range(count):
        m = rng.randint(0, max_rank)
        p, q, r = (rng.randint(0, m) for _ in range(3))
        cases.append(
            (
                _random_element(rng, m, p),
                _random_element(rng, m, q),
                _random_element(rng, m, r),
            )
        )
    _record(
        report,
        "graded_anticommutativity",
        count,
        _first_failure(
            cases,
            lambda c: wedge(c[0], c[1])
            == (-1) ** (c[0].degree * c[1].degree) * wedge(c[1], c[0]),
        ),
    )
    _record(
        report,
        "associativity",
        count,
        _first_failure(
            cases,
            lambda c: wedge(wedge(c[0], c[1]), c[2])
            == wedge(c[0], wedge(c[1], c[2])),
        ),
    )
    _record(
        report,
        "odd_square_vanishes",
        count,
        _first_failure(
            cases,
            lambda c: c[0].degree % 2 == 0 or wedge(c[0], c[0]).is_zero,
        ),
    )
    return report


def divided_power_suite(max_genus: int = 6) -> CheckReport:
    """Check k!·(θᵏ/k!) = θᵏ for 0 ≤ k ≤ g ≤ max_genus."""
    report = CheckReport(title="Divided powers of θ")
    cases = [
        (g, k) for g in range(max_genus + 1) for k in range(g + 1)
    ]
    _record(
        report,
        "divided_power_integrality",
        len(cases),
        _first_failure(
            cases,
            lambda c: math.factorial(c[1]) * theta_divided(*c)
            == power(theta(c[0]), c[1]),
        ),
    )
    return report


def pd_pairing_suite(max_genus: int = 3) -> CheckReport:
    """Check that Λᵏ × Λ^{2g−k} → ℤ is perfect for g ≤ max_genus."""
    report = CheckReport(title="Poincaré duality pairing")
    cases = [
        (g, k) for g in range(1, max_genus + 1) for k in range(2 * g + 1)
    ]
    _record(
        report,
        "pairing_unimodular",
        len(cases),
        _first_failure(cases, lambda c: is_unimodular(pairing_matrix(*c))),
    )
    return report


# Second quotient suites


def duality_suite(
    rng: random.Random,
    count: int,
    *,
    max_h1_rank: int = 8,
    max_h2_rank: int = 10,
) -> CheckReport:
    """Check the cup product and μ descriptions against each other.

    The cases alternate between spaces given by μ and spaces given by the
    cup product.
    """
    report = CheckReport(title="Duality of μ and the cup product")
    generators = (random_space, random_cup_space)
    spaces = [
        generators[k % 2](
            rng, max_h1_rank=max_h1_rank, max_h2_rank=max_h2_rank
        )
        for k in range(count)
    ]

    def descriptions_agree(space: SpaceData) -> bool:
        h1_rank = space.h1_rank
        by_cup = SpaceData.from_cup("cup", cup_matrix(space), h1_rank=h1_rank)
        by_mu = SpaceData.from_mu("mu", mu_matrix(space), h1_rank=h1_rank)
        return second_lcs_quotient(by_cup) == second_lcs_quotient(by_mu)

    _record(
        report,
        "cup_and_mu_agree",
        count,
        _first_failure(spaces, descriptions_agree),
    )
    _record(
        report,
        "rational_rank_equals_ker_cup_dim",
        count,
        _first_failure(spaces, lambda s: rational_rank(s) == ker_cup_dim(s)),
    )

    def hom_rank_matches(space: SpaceData) -> bool:
        group = second_lcs_quotient(space).group
        return all(
            ker_cup_dim_mod_p(space, p) == group.hom_rank_mod_p(p)
            for p in (2, 3, 5)
        )

    _record(
        report,
        "ker_cup_mod_p_equals_hom_rank",
        count,
        _first_failure(spaces, hom_rank_matches),
    )

    def basis_invariant(space: SpaceData) -> bool:
        mu = mu_matrix(space)
        changed = (
            random_unimodular(rng, mu.rows)
            @ mu
            @ random_unimodular(rng, mu.cols)
        )
        other = SpaceData.from_mu("changed", changed, h1_rank=space.h1_rank)
        return second_lcs_quotient(other) == second_lcs_quotient(space)

    _record(
        report,
        "change_of_basis_invariance",
        count,
        _first_failure(spaces, basis_invariant),
    )

    def zero_column_robust(space: SpaceData) -> bool:
        mu = mu_matrix(space).hstack(IntMatrix.zeros(space.lambda2_rank, 1))
        other = SpaceData.from_mu("padded", mu, h1_rank=space.h1_rank)
        return second_lcs_quotient(other) == second_lcs_quotient(space)

    _record(
        report,
        "zero_column_robustness",
        count,
        _first_failure(spaces, zero_column_robust),
    )
    return report


# Nilpotent oracle suites


def nilpotent_suite(
    rng: random.Random, count: int, *, max_generators: int = 5
) -> CheckReport:
    """Check the group axioms and centrality of commutators."""
    report = CheckReport(title="Free class-2 nilpotent group")
    cases = []
    for _ in range(count):
        n = rng.randint(1, max_generators)
        cases.append(
            tuple(
                eval_word(random_word(rng, n, rng.randint(0, 8)), n)
                for _ in range(3)
            )
        )
    _record(
        report,
        "associativity",
        count,
        _first_failure(
            cases,
            lambda c: nf_mul(nf_mul(c[0], c[1]), c[2])
            == nf_mul(c[0], nf_mul(c[1], c[2])),
        ),
    )

    def identity_and_inverse(
        case: tuple[Class2Element, ...],
    ) -> bool:
        x = case[0]
        e = Class2Element.identity(x.n)
        return (
            nf_mul(x, e) == x
            and nf_mul(e, x) == x
            and nf_mul(x, nf_inverse(x)).is_identity
            and nf_mul(nf_inverse(x), x).is_identity
        )

    _record(
        report,
        "identity_and_inverse",
        count,
        _first_failure(cases, identity_and_inverse),
    )

    def central(case: tuple[Class2Element, ...]) -> bool:
        x, y, z = case
        c = nf_commutator(x, y)
        return (
            nf_mul(c, z) == nf_mul(z, c)
            and not any(c.a)
            and c.b == exterior_product(x.a, y.a)
        )

    _record(
        report,
        "commutator_central_and_bilinear",
        count,
        _first_failure(cases, central),
    )

    def powers(case: tuple[Class2Element, ...]) -> bool:
        x = case[0]
        e = Class2Element.identity(x.n)
        positive = e
        for m in range(6):
            if nf_power(x, m) != positive:
                return False
            if nf_power(x, -m) != nf_power(nf_inverse(x), m):
                return False
            positive = nf_mul(positive, x)
        return True

    _record(report, "power_closed_form", count, _first_failure(cases, powers))
    return report


class TietzeMove(StrEnum):
    """Presentation moves that preserve the group."""

    invert = "invert"
    cyclic_shift = "cyclic_shift"
    conjugate = "conjugate"
    multiply = "multiply"
    insert_cancelling_pair = "insert_cancelling_pair"
    new_generator = "new_generator"


def tietze_move(
    rng: random.Random,
    pres: GroupPresentation,
    move: TietzeMove | None = None,
) -> GroupPresentation:
    """Apply one Tietze move, chosen at random unless ``move`` is given.

    ``multiply`` replaces a relator r_k by r_k·r_j^±1 for some j ≠ k. With
    fewer than two relators it, like every relator move on a presentation
    without relators, falls back to ``new_generator``.
    """
    n = pres.generators
    relators = [list(word) for word in pres.relators]
    if move is None:
        move = rng.choice(list(TietzeMove))
    k = rng.randrange(len(relators)) if relators else 0
    match move:
        case TietzeMove.invert if relators:
            relators[k] = _inverse_word(relators[k])
        case TietzeMove.cyclic_shift if relators:
            shift = rng.randrange(len(relators[k]) or 1)
            relators[k] = relators[k][shift:] + relators[k][:shift]
        case TietzeMove.conjugate if relators:
            w = random_word(rng, n, rng.randint(1, 3))
            relators[k] = w + relators[k] + _inverse_word(w)
        case TietzeMove.multiply if len(relators) > 1:
            j = rng.choice([i for i in range(len(relators)) if i != k])
            other = relators[j]
            if rng.random() < 0.5:
                other = _inverse_word(other)
            relators[k] = relators[k] + other
        case TietzeMove.insert_cancelling_pair if relators:
            position = rng.randint(0, len(relators[k]))
            letter = rng.choice([1, -1]) * rng.randint(1, n)
            relators[k][position:position] = [letter, -letter]
        case _:
            w = random_word(rng, n, rng.randint(0, 4))
            relators.append([n + 1, *_inverse_word(w)])
            n += 1
    return GroupPresentation(generators=n, relators=relators)


def tietze_suite(rng: random.Random, count: int) -> CheckReport:
    """Check that γ₂/γ₃ is unchanged by random Tietze moves."""
    report = CheckReport(title="Tietze invariance of γ₂/γ₃")
    cases = []
    for _ in range(count):
        pres = random_presentation(rng)
        moved = pres
        for _ in range(rng.randint(1, 3)):
            moved = tietze_move(rng, moved)
        cases.append((pres, moved))
    _record(
        report,
        "tietze_invariance",
        count,
        _first_failure(
            cases,
            lambda c: gamma2_mod_gamma3(c[0]) == gamma2_mod_gamma3(c[1]),
        ),
    )
    return report


def run_selftest(seed: int, *, scale: float = 0.1) -> CheckReport:
    """Run every property suite.

    Case counts are the full counts (500 Smith forms up to 40×40, 200
    spaces, 1000 nilpotent triples) multiplied by ``scale``.
    """
    log = logger.bind(task="selftest", seed=seed, scale=scale)
    rng = random.Random(seed)

    def scaled(full: int) -> int:
        return max(1, round(full * scale))

    max_dim = max(8, round(40 * min(scale, 1.0)))
    report = CheckReport(title="Property suites")
    report.values["seed"] = str(seed)
    report.values["scale"] = str(scale)
    suites: list[tuple[str, Callable[[], CheckReport]]] = [
        ("snf", lambda: snf_suite(rng, scaled(500), max_dim=max_dim)),
        (
            "cokernel_invariance",
            lambda: cokernel_invariance_suite(rng, scaled(200)),
        ),
        ("kernel", lambda: kernel_suite(rng, scaled(200))),
        ("rank1", lambda: rank1_suite(rng, scaled(200))),
        ("exterior", lambda: exterior_suite(rng, scaled(500))),
        ("divided_powers", divided_power_suite),
        ("pd_pairing", pd_pairing_suite),
        ("duality", lambda: duality_suite(rng, scaled(200))),
        ("nilpotent", lambda: nilpotent_suite(rng, scaled(1000))),
        ("tietze", lambda: tietze_suite(rng, scaled(200))),
    ]
    for name, suite in suites:
        result = suite()
        log.info("Ran property suite", suite=name, passed=result.passed)
        report.extend(result)
    return report
