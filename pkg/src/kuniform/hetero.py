"""AME non-existence in systems with mixed local dimensions.

Two exact certificates are computed for a profile (d_1, ..., d_N):

  * the generalized subset inequality: a (floor(N/2)+2)-subset A with

        (prod_{i in A} d_i^2 / prod_i d_i) (1 - sum_{i in A} 1/d_i^2)
            + floor(N/2) + 1  <  0

    certifies that no AME state exists.  `scott_check` evaluates the left
    side exactly; `scott_search` looks for a negative subset.  The value
    depends only on the multiset of dimensions inside A, so the search
    enumerates dimension multisets (largest dimensions concentrated
    first), which is exhaustive over subsets up to the permutation
    symmetry the test suite verifies.  For the two-dimension family
    d1 x d2^(2n), `scott_pair_threshold` gives the smallest n certified in
    closed form by the two structured subsets (the whole small-dimension
    block, or the odd party plus a small-dimension block).

  * the shadow inequality: for odd N the hypothetical AME purity profile
    makes every shadow coefficient a finite combination of the elementary
    symmetric polynomials A'_k of the reciprocal dimensions,

        s_j = sum_k [ sum_a (-1)^a C(N-k, N-j-a) C(k, a) ] A'_k,

    with A'_k = A'_(N-k) above the midpoint.  Any s_j < 0 certifies
    non-existence (`hetero_shadow`).

`ame_verdict` runs the cheap tests first (Schmidt feasibility, the pair
threshold, the subset search, then the shadow) and reports the first
certificate found; it never claims existence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceededError, NotApplicableError
from .exact import binom, elem_sym_prefix, rat_to_str

DEFAULT_SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class DimensionProfile:
    """Ordered local dimensions d_1 .. d_N of a multipartite system."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) < 2:
            raise ValueError("a profile needs at least 2 parties")
        if any(d < 2 for d in self.dims):
            raise ValueError("every local dimension must be >= 2")

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def is_homogeneous(self) -> bool:
        return len(set(self.dims)) == 1

    def schmidt_feasible(self) -> bool:
        """Every floor(N/2)-subset must have product at most its complement's.

        Checked on the worst case (the largest dimensions), which dominates
        all other subsets.
        """
        half = self.n_parties // 2
        largest = prod(sorted(self.dims, reverse=True)[:half])
        return largest * largest <= self.total_dim

    @classmethod
    def parse(cls, text: str) -> "DimensionProfile":
        """Parse "<dim>x<count>,..." (e.g. "3x1,2x10") or a JSON array "[3,2,2]"."""
        text = text.strip()
        if text.startswith("["):
            dims_list = json.loads(text)
            if not isinstance(dims_list, list):
                raise ValueError(f"profile JSON must be an array, got {text!r}")
            return cls(tuple(int(d) for d in dims_list))
        dims: list[int] = []
        for term in text.split(","):
            term = term.strip()
            if not term:
                raise ValueError(f"empty term in profile string {text!r}")
            parts = term.split("x")
            if len(parts) != 2:
                raise ValueError(f"bad profile term {term!r}, expected <dim>x<count>")
            dim, count = int(parts[0]), int(parts[1])
            if count < 1:
                raise ValueError(f"multiplicity must be >= 1 in {term!r}")
            dims.extend([dim] * count)
        return cls(tuple(dims))

    def to_spec_string(self) -> str:
        """Inverse of parse, grouping consecutive equal dimensions."""
        groups: list[tuple[int, int]] = []
        for d in self.dims:
            if groups and groups[-1][0] == d:
                groups[-1] = (d, groups[-1][1] + 1)
            else:
                groups.append((d, 1))
        return ",".join(f"{d}x{c}" for d, c in groups)


@dataclass(frozen=True)
class ScottWitness:
    """A subset (0-based party indices) with negative inequality value."""

    subset: tuple[int, ...]
    value: Fraction

    def to_json_dict(self) -> dict:
        return {"subset": list(self.subset), "value": rat_to_str(self.value)}


def scott_check(profile: DimensionProfile, subset: Iterable[int]) -> Fraction:
    """Exact left-hand side of the subset inequality for a candidate A.

    A negative value certifies AME non-existence; nonnegative values prove
    nothing (the test is only sufficient).
    """
    members = tuple(subset)
    half = profile.n_parties // 2
    if len(members) != half + 2:
        raise ValueError(
            f"subset must have floor(N/2)+2 = {half + 2} parties, got {len(members)}"
        )
    if len(set(members)) != len(members):
        raise ValueError("subset indices must be distinct")
    dims_a = [profile.dims[i] for i in members]
    ratio = Fraction(prod(d * d for d in dims_a), profile.total_dim)
    deficit = Fraction(1) - sum(Fraction(1, d * d) for d in dims_a)
    return ratio * deficit + half + 1


def _dimension_classes(profile: DimensionProfile) -> list[tuple[int, list[int]]]:
    """Distinct dimensions, largest first, with the party indices carrying them."""
    by_dim: dict[int, list[int]] = {}
    for idx, d in enumerate(profile.dims):
        by_dim.setdefault(d, []).append(idx)
    return [(d, by_dim[d]) for d in sorted(by_dim, reverse=True)]


def _class_count_vectors(capacities: Sequence[int], size: int):
    """All ways to draw `size` parties from classes with the given capacities.

    Yields count vectors in the order that concentrates earlier (larger)
    classes first.
    """

    def rec(pos: int, remaining: int, prefix: tuple[int, ...]):
        if pos == len(capacities):
            if remaining == 0:
                yield prefix
            return
        tail_capacity = sum(capacities[pos + 1 :])
        lo = max(0, remaining - tail_capacity)
        hi = min(capacities[pos], remaining)
        for c in range(hi, lo - 1, -1):
            yield from rec(pos + 1, remaining - c, prefix + (c,))

    yield from rec(0, size, ())


def scott_search(
    profile: DimensionProfile, budget: int = DEFAULT_SUBSET_BUDGET
) -> Optional[ScottWitness]:
    """First witness subset with negative inequality value, if any exists.

    The inequality value is invariant under permuting equal dimensions, so
    subsets are enumerated as dimension multisets; the reported witness
    takes the lowest-numbered parties realising the first negative class.
    Raises BudgetExceededError rather than truncating the enumeration.
    """
    size = profile.n_parties // 2 + 2
    if size > profile.n_parties:
        return None
    classes = _dimension_classes(profile)
    capacities = [len(idxs) for _, idxs in classes]
    evaluated = 0
    for counts in _class_count_vectors(capacities, size):
        evaluated += 1
        if evaluated > budget:
            raise BudgetExceededError(
                f"subset search exceeded budget of {budget} evaluations"
            )
        subset: list[int] = []
        for (d, idxs), c in zip(classes, counts):
            subset.extend(idxs[:c])
        subset.sort()
        value = scott_check(profile, subset)
        if value < 0:
            return ScottWitness(tuple(subset), value)
    return None


def scott_pair_threshold(d1: int, d2: int) -> int:
    """Smallest n at which the inequality certifies d1 x d2^(2n) in closed form.

    Uses the structured subset of all-small parties when d1 < d2, and the
    odd party plus small parties otherwise.  Requires d1 <= d2^2; larger d1
    makes the profile Schmidt-infeasible outright.
    """
    if d1 < 2 or d2 < 2:
        raise ValueError("dimensions must be >= 2")
    if d1 > d2 * d2:
        raise NotApplicableError(
            f"profile {d1} x {d2}^(2n) is Schmidt-infeasible (d1 > d2^2)"
        )
    if d1 < d2:
        bound = Fraction(d2**4 - d1, d2**2 - d1) - 2
    else:
        bound = Fraction(d2**2 * (d1 + 1), d1) - 1
    return bound.__floor__() + 1


def _pair_structured_subset(
    profile: DimensionProfile, d1: int, d2: int
) -> tuple[int, ...]:
    """The closed-form threshold's witness subset, as concrete indices."""
    n = profile.n_parties // 2
    odd_ones = [i for i, d in enumerate(profile.dims) if d == d1]
    small = [i for i, d in enumerate(profile.dims) if d == d2]
    if d1 < d2:
        return tuple(sorted(small[: n + 2]))
    if d1 == d2:
        return tuple(range(n + 2))
    return tuple(sorted(odd_ones[:1] + small[: n + 1]))


# ---------------------------------------------------------------------------
# heterogeneous shadow coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeteroShadow:
    """Shadow coefficients of a hypothetical AME state on an odd-N profile."""

    profile: DimensionProfile
    a_prime: tuple[Fraction, ...]
    s: tuple[Fraction, ...]

    def first_negative(self) -> Optional[int]:
        for j, v in enumerate(self.s):
            if v < 0:
                return j
        return None


def hetero_shadow(profile: DimensionProfile) -> HeteroShadow:
    """Exact shadow coefficients from the elementary symmetric averages.

    Only defined for odd N (profiles with unequal dimensions admit AME
    states only at odd party counts).  Any s_j < 0 certifies that no AME
    state exists on the profile.
    """
    n = profile.n_parties
    if n % 2 == 0:
        raise NotApplicableError("the shadow certificate needs an odd party count")
    half = (n - 1) // 2
    reciprocals = [Fraction(1, d) for d in profile.dims]
    a_prime = elem_sym_prefix(reciprocals, half)
    a_full = [
        a_prime[k] if k <= half else a_prime[n - k] for k in range(n + 1)
    ]

    # scale to integers: A'_k * total_dim is a sum of complement products
    total = profile.total_dim
    a_int = [int(v * total) for v in a_full]
    s: list[Fraction] = []
    for j in range(n + 1):
        acc = 0
        for k in range(n + 1):
            kernel = 0
            for a in range(max(0, k - j), min(k, n - j) + 1):
                kernel += (-1) ** a * binom(n - k, n - j - a) * binom(k, a)
            acc += kernel * a_int[k]
        s.append(Fraction(acc, total))
    return HeteroShadow(profile, tuple(a_full), tuple(s))


# ---------------------------------------------------------------------------
# combined verdict
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable reason for a non-existence verdict."""

    kind: str  # "scott-witness" | "corollary7" | "shadow-negative(j)"
    witness: Optional[ScottWitness] = None
    shadow_index: Optional[int] = None
    shadow_value: Optional[Fraction] = None
    threshold: Optional[int] = None

    def to_json_dict(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.witness is not None:
            doc["witness"] = self.witness.to_json_dict()
        if self.shadow_index is not None:
            doc["j"] = self.shadow_index
            doc["s_j"] = rat_to_str(self.shadow_value)
        if self.threshold is not None:
            doc["threshold_n"] = self.threshold
        return doc


@dataclass(frozen=True)
class AmeVerdict:
    """Outcome of the non-existence tests; never claims existence."""

    profile: DimensionProfile
    status: str  # "infeasible" | "nonexistent" | "unknown"
    certificate: Optional[Certificate] = None

    def to_json_dict(self) -> dict:
        doc: dict = {
            "profile": list(self.profile.dims),
            "status": self.status,
        }
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json_dict()
        return doc


def _pair_family(profile: DimensionProfile) -> Optional[tuple[int, int, int]]:
    """Detect the d1 x d2^(2n) shape (odd N); homogeneous odd counts as d1 = d2."""
    n_parties = profile.n_parties
    if n_parties % 2 == 0:
        return None
    counts: dict[int, int] = {}
    for d in profile.dims:
        counts[d] = counts.get(d, 0) + 1
    if len(counts) == 1:
        d = profile.dims[0]
        return d, d, n_parties // 2
    if len(counts) == 2:
        (da, ca), (db, cb) = sorted(counts.items())
        if ca == 1:
            return da, db, cb // 2
        if cb == 1:
            return db, da, ca // 2
    return None


def ame_verdict(
    profile: DimensionProfile, budget: int = DEFAULT_SUBSET_BUDGET
) -> AmeVerdict:
    """Combined AME non-existence verdict, cheapest test first.

    Order: Schmidt feasibility precheck, closed-form pair threshold,
    subset search, shadow coefficients.  The certificate reflects the
    first test that fires; "corollary7" certificates embed the structured
    witness subset so they remain independently checkable.
    """
    if not profile.schmidt_feasible():
        return AmeVerdict(profile, "infeasible")

    family = _pair_family(profile)
    if family is not None:
        d1, d2, n = family
        threshold = scott_pair_threshold(d1, d2)
        if n >= threshold:
            subset = _pair_structured_subset(profile, d1, d2)
            value = scott_check(profile, subset)
            if value < 0:
                return AmeVerdict(
                    profile,
                    "nonexistent",
                    Certificate(
                        "corollary7",
                        witness=ScottWitness(subset, value),
                        threshold=threshold,
                    ),
                )

    witness = scott_search(profile, budget=budget)
    if witness is not None:
        return AmeVerdict(
            profile, "nonexistent", Certificate("scott-witness", witness=witness)
        )

    if profile.n_parties % 2 == 1:
        shadow = hetero_shadow(profile)
        j = shadow.first_negative()
        if j is not None:
            return AmeVerdict(
                profile,
                "nonexistent",
                Certificate(
                    f"shadow-negative({j})",
                    shadow_index=j,
                    shadow_value=shadow.s[j],
                ),
            )

    return AmeVerdict(profile, "unknown")
