"""
Verification service: the acceptance suites behind ``verify``.

Every suite expands into named instances (one per tree, chain or
parameter row). Instances of a suite run concurrently on worker threads;
failures are collected in instance order so the report is the same for
every schedule.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass
from typing import Callable, Optional

from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.image import (
    in_pop_image,
    in_pop_image_by_enclosure,
    pop_preimage,
    popk_necessary,
)
from ornapop.combinatorics.lattice_lab import (
    brute_max_orbit,
    brute_popk_image,
    check_semidistributive,
    meet_in_lattice,
    search_popk_counterexample,
)
from ornapop.combinatorics.ornamentation import (
    meet,
    minimal_reduction_nodes,
    pop,
    pop_via_covers,
)
from ornapop.combinatorics.rank_orbit import (
    chain_profiles,
    dagger_construction,
    dagger_prediction,
    forward_orbit,
    max_orbit_size,
)
from ornapop.combinatorics.tamari import (
    count_popk_images,
    gf_coefficients,
    in_popk_image_tamari,
    motzkin_numbers,
)
from ornapop.combinatorics.trees import RootedPlaneTree, catalan, chain_tree, enumerate_plane_trees
from ornapop.config.settings import settings
from ornapop.models.records import compact_label
from ornapop.models.reports import SuiteFailure, SuiteResult, VerificationReport
from ornapop.services.base.base_service import BaseService
from ornapop.services.lattice_service import LatticeService
from ornapop.telemetries.logger import logger

EVENT = "verification_service"

SUITES = (
    "tamari-sizes",
    "max-orbit",
    "dagger",
    "pop-image",
    "popk-necessary",
    "tamari-popk",
    "gf",
    "semidistributive",
    "counterexample",
    "cross-checks",
)
GF_ORDER = 12
CATALAN_ROW = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012]
SHIFTED_MOTZKIN_ROW = [1, 1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798]

Check = Callable[[], list[SuiteFailure]]


@dataclass(frozen=True)
class Instance:
    name: str
    check: Check


def trees_upto(max_nodes: int) -> list[RootedPlaneTree]:
    return [t for n in range(1, max_nodes + 1) for t in enumerate_plane_trees(n)]


class VerificationService(BaseService):
    """
    Runs the acceptance suites.

    ``max_nodes`` scales every suite: tree-wide oracles cover trees up to
    ``max_nodes`` nodes, the costlier per-k sweeps one node fewer and the
    chain sweeps one node more, all capped at ``MAX_TREE_NODES``.
    """

    def __init__(self, lattices: LatticeService, threads: Optional[int] = None) -> None:
        self._lattices = lattices
        self._threads = threads
        # suite "pop-image" is built by method _pop_image, and so on
        self._suites: dict[str, Callable[[int], list[Instance]]] = {
            name: getattr(self, "_" + name.replace("-", "_")) for name in SUITES
        }

    # ── Lifecycle ──

    async def health_check(self) -> bool:
        return self.is_initialized and await self._lattices.health_check()

    @property
    def suite_names(self) -> list[str]:
        return list(self._suites)

    # ── Running ──

    async def run(self, max_nodes: Optional[int] = None, suite: Optional[str] = None) -> VerificationReport:
        self._ensure_initialized()
        bound = settings.VERIFY_MAX_NODES if max_nodes is None else max_nodes
        if bound < 1:
            raise DomainError("--max-nodes must be at least 1")
        if suite is not None and suite not in self._suites:
            raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(self._suites)}")
        names = [suite] if suite else self.suite_names

        report = VerificationReport(max_nodes=bound)
        for name in names:
            report.suites.append(await self.run_suite(name, bound))
        return report

    async def run_suite(self, name: str, max_nodes: int) -> SuiteResult:
        instances = self._suites[name](max_nodes)
        logger.info(EVENT, message=f"Suite {name} started", instances=len(instances))
        gate = asyncio.Semaphore(max(1, self._threads or settings.THREADS))

        async def run_one(instance: Instance) -> list[SuiteFailure]:
            async with gate:
                return await asyncio.to_thread(instance.check)

        outcomes = await asyncio.gather(*(run_one(i) for i in instances))
        failures = [f for batch in outcomes for f in batch]
        logger.info(EVENT, message=f"Suite {name} finished", instances=len(instances), failures=len(failures))
        return SuiteResult(name=name, instances=len(instances), failures=failures)

    # ── Helpers ──

    @staticmethod
    def _cap(n: int) -> int:
        return min(n, settings.MAX_TREE_NODES)

    @staticmethod
    def _fail(suite: str, instance: str, expected: object, actual: object) -> SuiteFailure:
        return SuiteFailure(suite=suite, instance=instance, expected=str(expected), actual=str(actual))

    # ── Suites ──

    def _tamari_sizes(self, max_nodes: int) -> list[Instance]:
        def check(n: int) -> list[SuiteFailure]:
            size = len(self._lattices.get(chain_tree(n)))
            return [] if size == catalan(n) else [self._fail("tamari-sizes", f"C_{n}", catalan(n), size)]

        return [Instance(f"C_{n}", lambda n=n: check(n)) for n in range(1, self._cap(max_nodes + 1) + 1)]

    def _max_orbit(self, max_nodes: int) -> list[Instance]:
        def check(tree: RootedPlaneTree) -> list[SuiteFailure]:
            formula = max_orbit_size(tree)
            brute = brute_max_orbit(self._lattices.get(tree))
            return [] if formula == brute else [self._fail("max-orbit", tree.render(), brute, formula)]

        def check_chain(n: int) -> list[SuiteFailure]:
            value = max_orbit_size(chain_tree(n))
            return [] if value == n else [self._fail("max-orbit", f"C_{n}", n, value)]

        return [Instance(t.render(), lambda t=t: check(t)) for t in trees_upto(max_nodes)] + [
            Instance(f"C_{n}", lambda n=n: check_chain(n)) for n in range(1, self._cap(max_nodes + 1) + 1)
        ]

    def _dagger(self, max_nodes: int) -> list[Instance]:
        def check(tree: RootedPlaneTree) -> list[SuiteFailure]:
            failures: list[SuiteFailure] = []
            built = dagger_construction(tree)
            orbit = forward_orbit(built.delta)
            expected = max_orbit_size(tree)
            if len(orbit) != expected or built.orbit_size != expected:
                failures.append(self._fail("dagger", tree.render(), expected, len(orbit)))
            for p, element in enumerate(orbit):
                predicted = dagger_prediction(built, p)
                if element != predicted:
                    failures.append(
                        self._fail(
                            "dagger", f"{tree.render()} p={p}", compact_label(predicted), compact_label(element)
                        )
                    )
            base = len(built.chain)
            for i in range(built.k):
                below = built.numbering[i + 1]
                for j in range(base, base + built.k - i):
                    if not tree.is_below(built.numbering[j], below):
                        failures.append(
                            self._fail("dagger", f"{tree.render()} v{j + 1}", f"below v{i + 2}", "not below")
                        )
            return failures

        return [Instance(t.render(), lambda t=t: check(t)) for t in trees_upto(max_nodes)]

    def _pop_image(self, max_nodes: int) -> list[Instance]:
        def check(tree: RootedPlaneTree) -> list[SuiteFailure]:
            lattice = self._lattices.get(tree)
            image = set(brute_popk_image(lattice, 1))
            failures: list[SuiteFailure] = []
            for delta in lattice.elements:
                name = f"{tree.render()} {compact_label(delta)}"
                member = delta in image
                if in_pop_image(delta) != member or in_pop_image_by_enclosure(delta) != member:
                    failures.append(self._fail("pop-image", name, member, not member))
                    continue
                if not member:
                    continue
                if pop(pop_preimage(delta)) != delta:
                    failures.append(self._fail("pop-image", name, "pop(preimage) = δ", "round trip broken"))
                for v in tree.nodes():
                    for u in minimal_reduction_nodes(delta, v):
                        if not delta.is_singleton(u):
                            failures.append(
                                self._fail("pop-image", f"{name} v{u + 1}", "singleton", "non-singleton")
                            )
            return failures

        return [Instance(t.render(), lambda t=t: check(t)) for t in trees_upto(max_nodes)]

    def _popk_necessary(self, max_nodes: int) -> list[Instance]:
        def check(tree: RootedPlaneTree, k: int) -> list[SuiteFailure]:
            failures: list[SuiteFailure] = []
            for delta in brute_popk_image(self._lattices.get(tree), k):
                report = popk_necessary(delta, k)
                if not report.passed:
                    failures.append(
                        self._fail(
                            "popk-necessary",
                            f"{tree.render()} k={k} {compact_label(delta)}",
                            "pass",
                            report.failures[0].detail,
                        )
                    )
            return failures

        return [
            Instance(f"{t.render()} k={k}", lambda t=t, k=k: check(t, k))
            for t in trees_upto(max(1, max_nodes - 1))
            for k in range(4)
        ]

    def _tamari_popk(self, max_nodes: int) -> list[Instance]:
        def check(n: int, k: int) -> list[SuiteFailure]:
            lattice = self._lattices.get(chain_tree(n))
            image = set(brute_popk_image(lattice, k))
            failures: list[SuiteFailure] = []
            for delta in lattice.elements:
                member = delta in image
                verdict = in_popk_image_tamari(delta, k)
                if verdict != member:
                    name = f"C_{n} k={k} {compact_label(delta)}"
                    failures.append(self._fail("tamari-popk", name, member, verdict))
                if k == 1 and verdict != in_pop_image(delta):
                    failures.append(
                        self._fail("tamari-popk", f"C_{n} hug {compact_label(delta)}", in_pop_image(delta), verdict)
                    )
            return failures

        return [
            Instance(f"C_{n} k={k}", lambda n=n, k=k: check(n, k))
            for n in range(1, self._cap(max_nodes + 1) + 1)
            for k in range(5)
        ]

    def _gf(self, max_nodes: int) -> list[Instance]:
        def check_row(k: int) -> list[SuiteFailure]:
            failures: list[SuiteFailure] = []
            series = gf_coefficients(k, GF_ORDER)
            recurrence = [count_popk_images(n, k) for n in range(GF_ORDER + 1)]
            if series != recurrence:
                failures.append(self._fail("gf", f"k={k}", recurrence, series))
            known = {0: CATALAN_ROW, 1: SHIFTED_MOTZKIN_ROW}.get(k)
            if known is not None and series != known:
                failures.append(self._fail("gf", f"k={k} row", known, series))
            if k == 1 and series[1:] != motzkin_numbers(GF_ORDER - 1):
                failures.append(self._fail("gf", "motzkin shift", motzkin_numbers(GF_ORDER - 1), series[1:]))
            return failures

        def check_brute(n: int, k: int) -> list[SuiteFailure]:
            size = len(brute_popk_image(self._lattices.get(chain_tree(n)), k))
            expected = count_popk_images(n, k)
            return [] if size == expected else [self._fail("gf", f"C_{n} k={k}", expected, size)]

        return [Instance(f"k={k}", lambda k=k: check_row(k)) for k in range(4)] + [
            Instance(f"C_{n} k={k}", lambda n=n, k=k: check_brute(n, k))
            for n in range(1, self._cap(max_nodes + 1) + 1)
            for k in range(4)
        ]

    def _semidistributive(self, max_nodes: int) -> list[Instance]:
        def check(tree: RootedPlaneTree) -> list[SuiteFailure]:
            report = check_semidistributive(self._lattices.get(tree))
            if report.ok:
                return []
            name = f"{tree.render()} cover {report.lower}<{report.upper}"
            return [self._fail("semidistributive", name, "ok", report.reason)]

        return [Instance(t.render(), lambda t=t: check(t)) for t in trees_upto(max_nodes)]

    def _counterexample(self, max_nodes: int) -> list[Instance]:
        bound = self._cap(max_nodes)

        def check_general() -> list[SuiteFailure]:
            found = search_popk_counterexample(bound, 2, lattice_of=self._lattices.get)
            if found is None:
                return [self._fail("counterexample", f"k=2 n<={bound}", "witness", "none")]
            return []

        def check_chains(k: int) -> list[SuiteFailure]:
            found = search_popk_counterexample(bound, k, chains_only=True, lattice_of=self._lattices.get)
            if found is not None:
                return [self._fail("counterexample", f"chains k={k}", "none", compact_label(found.delta))]
            return []

        instances = [Instance(f"chains k={k}", lambda k=k: check_chains(k)) for k in (2, 3)]
        # The smallest witness has six nodes.
        if bound >= 6:
            instances.insert(0, Instance("k=2", check_general))
        return instances

    def _cross_checks(self, max_nodes: int) -> list[Instance]:
        def check_profiles(tree: RootedPlaneTree) -> list[SuiteFailure]:
            chain_profiles(tree)
            return []

        def check_pop_and_meet(tree: RootedPlaneTree) -> list[SuiteFailure]:
            lattice = self._lattices.get(tree)
            failures: list[SuiteFailure] = []
            for delta in lattice.elements:
                if pop(delta) != pop_via_covers(delta):
                    expected, actual = compact_label(pop_via_covers(delta)), compact_label(pop(delta))
                    failures.append(self._fail("cross-checks", f"pop {compact_label(delta)}", expected, actual))
            for a in lattice.elements:
                for b in lattice.elements:
                    if meet(a, b) != meet_in_lattice(lattice, a, b):
                        name = f"meet {compact_label(a)} {compact_label(b)}"
                        expected = compact_label(meet_in_lattice(lattice, a, b))
                        failures.append(self._fail("cross-checks", name, expected, compact_label(meet(a, b))))
            return failures

        def check_mirror(tree: RootedPlaneTree) -> list[SuiteFailure]:
            mirror, mapping = tree.mirrored()
            lattice = self._lattices.get(tree)
            other = self._lattices.get(mirror)
            image = [other.index_of(d.relabeled(mirror, mapping)) for d in lattice.elements]
            edges = {(image[lo], image[hi]) for lo, hi in lattice.hasse}
            if len(set(image)) != len(lattice) or len(other) != len(lattice) or edges != set(other.hasse):
                return [self._fail("cross-checks", f"mirror {tree.render()}", "isomorphic", "not isomorphic")]
            return []

        small = trees_upto(max(1, max_nodes - 1))
        return (
            [
                Instance(f"profiles {t.render()}", lambda t=t: check_profiles(t))
                for t in trees_upto(self._cap(max_nodes + 2))
            ]
            + [Instance(f"pop/meet {t.render()}", lambda t=t: check_pop_and_meet(t)) for t in small]
            + [Instance(f"mirror {t.render()}", lambda t=t: check_mirror(t)) for t in small]
        )
