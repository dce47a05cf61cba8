"""
Chains: the g-sequence encoding of Tamari elements, the exact Pop^k image
test with preimages, and counting of Pop^k images.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence, Union

from sympy import Poly, symbols

from ornapop.combinatorics.errors import DomainError, IntegrityError
from ornapop.combinatorics.image import in_pop_image, pop_preimage
from ornapop.combinatorics.ornamentation import Ornamentation
from ornapop.combinatorics.rank_orbit import pop_power
from ornapop.combinatorics.trees import RootedPlaneTree, chain_tree
from ornapop.models.reports import PopkCondition, PopkFailure, PopkReport
from ornapop.telemetries.logger import logger


@dataclass(frozen=True)
class GSequence:
    """
    ``g[i-1]`` is the largest (1-based) index in δ(v_i) on the chain C_n.

    Two ornaments ``i < j`` are disjoint when ``g(i) < j`` and nested when
    ``g(i) ≥ g(j)``; anything else is rejected.
    """

    g: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.g)
        if n == 0:
            raise DomainError("a g-sequence needs at least one entry")
        for i, gi in enumerate(self.g, start=1):
            if not isinstance(gi, int) or not i <= gi <= n:
                raise DomainError(f"g({i}) = {gi} is outside [{i}, {n}]")
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if not (self(i) < j or self(i) >= self(j)):
                    raise DomainError(f"ornaments at v{i} and v{j} overlap without nesting")

    @classmethod
    def of(cls, values: Sequence[int]) -> GSequence:
        return cls(tuple(values))

    @classmethod
    def from_ornamentation(cls, delta: Ornamentation) -> GSequence:
        if not delta.tree.is_chain:
            raise DomainError(f"g-sequences encode chains only, not {delta.tree.render()}")
        return cls(tuple(max(o) + 1 for o in delta.ornaments))

    def __call__(self, i: int) -> int:
        return self.g[i - 1]

    def __len__(self) -> int:
        return len(self.g)

    @property
    def n(self) -> int:
        return len(self.g)

    def is_singleton(self, i: int) -> bool:
        return self(i) == i

    def wrapper(self, i: int) -> int:
        """Deepest ``j < i`` whose ornament contains ``v_i``; 0 stands for ω."""
        for j in range(i - 1, 0, -1):
            if self(j) >= i:
                return j
        return 0

    def to_ornamentation(self, tree: RootedPlaneTree | None = None) -> Ornamentation:
        chain = chain_tree(self.n) if tree is None else tree
        if not chain.is_chain or chain.n != self.n:
            raise DomainError(f"{self} does not live on {chain.render()}")
        return Ornamentation.trusted(
            chain, tuple(frozenset(range(i - 1, self(i))) for i in range(1, self.n + 1))
        )

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.g)) + "]"


def _as_gsequence(delta: Union[GSequence, Ornamentation]) -> GSequence:
    return delta if isinstance(delta, GSequence) else GSequence.from_ornamentation(delta)


# ── Pop^k image on chains ──


def tamari_popk_report(delta: Union[GSequence, Ornamentation], k: int) -> PopkReport:
    """
    Check the two conditions that characterize the Pop^k image of a
    Tamari lattice, for every non-singleton ornament δ(v_i):

    * tamari-i: no hug, i.e. the wrapper ``j`` has ``g(j) ≠ g(i)`` and a
      top-level ornament does not reach ``v_n``;
    * tamari-ii: at least ``k`` ornaments lie below δ(v_i), the top
      ``k - 1`` of them singletons.

    Witness node ids in the failures are 0-based.
    """
    g = _as_gsequence(delta)
    if k < 0:
        raise DomainError("k must be non-negative")
    failures: list[PopkFailure] = []
    if k == 0:
        return PopkReport(k=k)

    n = g.n
    for i in range(1, n + 1):
        if g.is_singleton(i):
            continue
        j = g.wrapper(i)
        if j and g(j) == g(i):
            failures.append(
                PopkFailure(
                    condition=PopkCondition.TAMARI_I,
                    witness=[j - 1, i - 1],
                    detail=f"v{j} hugs v{i}",
                )
            )
        elif not j and g(i) == n:
            failures.append(
                PopkFailure(
                    condition=PopkCondition.TAMARI_I,
                    witness=[i - 1],
                    detail=f"ω hugs v{i}",
                )
            )
        below = n - g(i)
        plain = all(g.is_singleton(m) for m in range(g(i) + 1, min(g(i) + k, n + 1)))
        if below < k or not plain:
            failures.append(
                PopkFailure(
                    condition=PopkCondition.TAMARI_II,
                    witness=[i - 1],
                    detail=f"{below} ornaments below v{i}, need {k} with the top {k - 1} singletons",
                )
            )
    return PopkReport(k=k, failures=failures)


def in_popk_image_tamari(delta: Union[GSequence, Ornamentation], k: int) -> bool:
    """
    Raises:
        DomainError: the ornamentation does not live on a chain.
    """
    return tamari_popk_report(delta, k).passed


def tamari_popk_preimage(delta: Union[GSequence, Ornamentation], k: int) -> GSequence:
    """
    Stretch every non-singleton ornament ``k - 1`` nodes downward.

    The result pops back to δ after ``k - 1`` steps and lies in the Pop
    image itself, which certifies that δ is in the Pop^k image.

    Raises:
        DomainError: ``k < 1`` or δ is not in the Pop^k image.
        IntegrityError: the round trip fails.
    """
    g = _as_gsequence(delta)
    if k < 1:
        raise DomainError("the Pop^k preimage needs k >= 1")
    report = tamari_popk_report(g, k)
    if not report.passed:
        first = report.failures[0]
        raise DomainError(f"not in the Pop^{k} image: {first.detail}")

    stretched = GSequence(
        tuple(g(i) if g.is_singleton(i) else g(i) + k - 1 for i in range(1, g.n + 1))
    )
    element = stretched.to_ornamentation()
    if pop_power(element, k - 1) != g.to_ornamentation() or not in_pop_image(element):
        raise IntegrityError(f"stretched preimage {stretched} of {g} fails the round trip")
    return stretched


def popk_certificate(delta: Ornamentation, k: int) -> Ornamentation:
    """An element σ with ``Pop^k(σ) = δ`` on a chain."""
    if k == 0:
        return delta
    stretched = tamari_popk_preimage(delta, k).to_ornamentation(delta.tree)
    sigma = pop_preimage(stretched)
    if pop_power(sigma, k) != delta:
        raise IntegrityError(f"certificate for {delta!r} does not reach it after {k} pops")
    return sigma


# ── Counting ──


_counts: dict[int, list[int]] = {}
_counts_lock = threading.Lock()


def count_popk_images(n: int, k: int) -> int:
    """
    ``A_n^(k)``: size of the Pop^k image of the Tamari lattice on ``n``
    nodes. ``A_n = 1`` for ``n ≤ k + 1``, otherwise
    ``A_n = Σ_{i=k}^{n-1} A_i A_{n-1-i}``.
    """
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    row = _counts.get(k)
    if row is not None and n < len(row):
        return row[n]
    with _counts_lock:
        row = _counts.setdefault(k, [])
        while len(row) <= n:
            m = len(row)
            if m <= k + 1:
                row.append(1)
            else:
                row.append(sum(row[i] * row[m - 1 - i] for i in range(k, m)))
        return row[n]


def gf_coefficients(k: int, upto: int) -> list[int]:
    """
    Coefficients of x^0 … x^upto of the Pop^k counting series.

    Values come from the recurrence; the truncated series ``F`` must satisfy
    ``x(1-x)F² - (1-x^{k+1})F + (1-x^{k+1}) ≡ 0 (mod x^{upto+1})``.

    Raises:
        IntegrityError: the identity fails.
    """
    if upto < 0 or k < 0:
        raise DomainError("k and the truncation order must be non-negative")
    coefficients = [count_popk_images(n, k) for n in range(upto + 1)]

    x = symbols("x")
    series = Poly(list(reversed(coefficients)), x)
    tail = Poly(1 - x ** (k + 1), x)
    residue = Poly(x * (1 - x), x) * series**2 - tail * series + tail
    for degree in range(upto + 1):
        c = residue.coeff_monomial(x**degree)
        if c != 0:
            logger.error("gf_identity_failed", k=k, degree=degree, coefficient=int(c))
            raise IntegrityError(f"generating-function identity fails at x^{degree} for k={k}")
    return coefficients


def motzkin_numbers(upto: int) -> list[int]:
    """M_0 … M_upto with ``M_n = M_{n-1} + Σ M_i M_{n-2-i}``."""
    values: list[int] = []
    for n in range(upto + 1):
        if n < 2:
            values.append(1)
        else:
            values.append(values[n - 1] + sum(values[i] * values[n - 2 - i] for i in range(n - 1)))
    return values
