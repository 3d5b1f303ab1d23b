"""
Differential verification of the invariant engines.

Compares the transfer matrix count with the breadth-first oracle over every
parameter string up to a given length, checks the bridge number bounds against
each other, and sweeps the torus pipeline over all coprime pairs up to a given
size. Failures are report content, never exceptions.
"""
import logging
from itertools import product
from math import gcd
from typing import Dict, Iterator, Optional

from app.core.config import settings
from app.core.exceptions import ValidationException
from app.schemas.records import InvariantReport, VerificationReport
from app.services.bounds import additive_iteration, fibonacci_upper, lower_bound, upper_bound
from app.services.corridor import SString, TunnelClass, build_corridor, depth, depth_profile, first_regular_index
from app.services.giantsteps import count_minimal_fast
from app.services.torus import NormalizedTorus, TorusInput, cabling_trace, torus_classify
from app.utils.json_formatter import LoggerAdapter

logger = LoggerAdapter(logging.getLogger(__name__), {"component": "verify"})

# Bound ordering enumerates regular strings up to this length at most
BOUND_ORDERING_MAX_LEN = 12


def all_sstrings(max_len: int) -> Iterator[SString]:
    """Every parameter string of length 1..max_len, shortest first."""
    for length in range(1, max_len + 1):
        for bits in product("01", repeat=length):
            yield SString("".join(bits))


def coprime_pairs(max_pq: int) -> Iterator[NormalizedTorus]:
    """Every (p, q) with 2 <= q < p <= max_pq and gcd(p, q) = 1."""
    for p in range(3, max_pq + 1):
        for q in range(2, p):
            if gcd(p, q) == 1:
                yield NormalizedTorus(p=p, q=q)


class VerificationService:
    """Runs every cross-check and collects one InvariantReport per invariant."""

    STRING_INVARIANTS = ("giant_step_oracle", "block_depth", "block_reassembly", "depth_steps")
    BOUND_INVARIANTS = ("bound_ordering",)
    TORUS_INVARIANTS = (
        "unimodular_trace",
        "final_row_sum",
        "odd_slopes",
        "cabling_count",
        "classification",
        "mirror_coherence",
        "additive_exactness",
    )
    CHECK_INVARIANTS = STRING_INVARIANTS[1:] + BOUND_INVARIANTS

    def __init__(self):
        self.invariants: Dict[str, InvariantReport] = {}

    def _report(self, name: str) -> InvariantReport:
        if name not in self.invariants:
            self.invariants[name] = InvariantReport(name=name)
        return self.invariants[name]

    def check_strings(self, max_len: int) -> Dict[str, int]:
        """Fast count and decomposition depth against the oracle on every string."""
        checked = 0
        mismatches = 0
        for s in all_sstrings(max_len):
            checked += 1
            profile = depth_profile(build_corridor(s))
            fast = count_minimal_fast(s)

            agrees = fast.count == profile.final_count
            if not agrees:
                mismatches += 1
            self._report("giant_step_oracle").record(
                agrees, f"{s.bits}: fast={fast.count} oracle={profile.final_count}"
            )

            steps_ok = all(
                0 <= later - earlier <= 1
                for earlier, later in zip(profile.depth, profile.depth[1:])
            )
            self._report("depth_steps").record(steps_ok, f"{s.bits}: depths={list(profile.depth)}")

            if fast.decomposition is not None:
                self._report("block_depth").record(
                    fast.decomposition.depth == profile.final_depth,
                    f"{s.bits}: blocks={fast.decomposition.depth} bfs={profile.final_depth}",
                )
                self._report("block_reassembly").record(
                    fast.decomposition.reassemble() == s.bits,
                    f"{s.bits}: reassembled={fast.decomposition.reassemble()}",
                )

        logger.info(f"Checked {checked} parameter strings up to length {max_len}, {mismatches} mismatches")
        return {"checked": checked, "mismatches": mismatches}

    def check_bounds(self, max_len: int) -> None:
        """lower_bound(s, 2, 2) <= upper_bound(s) <= Fibonacci bound on every regular string."""
        report = self._report("bound_ordering")
        for s in all_sstrings(min(max_len, BOUND_ORDERING_MAX_LEN)):
            if not s.is_regular:
                continue
            low = lower_bound(s, 2, 2)
            high = upper_bound(s)
            cap = fibonacci_upper(s.n + 1, first_regular_index(s))
            report.record(low <= high <= cap, f"{s.bits}: {low} <= {high} <= {cap}")

    def check_torus(self, max_pq: int) -> int:
        """Trace, slope, classification and bridge invariants over all coprime pairs."""
        pairs = 0
        for nt in coprime_pairs(max_pq):
            pairs += 1
            case = f"({nt.p},{nt.q})"
            trace = cabling_trace(nt)

            self._report("unimodular_trace").record(
                all(step.matrix.det == 1 and step.matrix.min_entry >= 0 for step in trace.steps),
                case,
            )
            self._report("final_row_sum").record(trace.steps[-1].stage_knot == (nt.p, nt.q), case)
            self._report("odd_slopes").record(
                trace.m0.is_odd_denominator and all(slope % 2 == 1 for slope in trace.slopes),
                case,
            )
            self._report("cabling_count").record(
                trace.cabling_count == -1 + sum(trace.cf.terms[1:]),
                case,
            )

            tunnel_class = torus_classify(TorusInput(nt.p, nt.q))
            all_zero = not trace.s_string.is_regular
            shallow = depth(trace.s_string) <= 1
            self._report("classification").record(
                (tunnel_class != TunnelClass.REGULAR) == all_zero == shallow,
                f"{case}: class={tunnel_class.value} s={trace.s_string.bits!r}",
            )

            mirror = cabling_trace(NormalizedTorus(p=nt.p, q=nt.q, mirrored=True))
            self._report("mirror_coherence").record(
                mirror.slopes == [-slope for slope in trace.slopes]
                and mirror.m0 == trace.m0.negate()
                and mirror.s_string == trace.s_string,
                case,
            )

            if trace.s_string.is_regular:
                m = first_regular_index(trace.s_string)
                # q-coordinates of the stage knots of tau_{m-2} and tau_{m-1}
                seed_a = trace.steps[m - 2].stage_knot[1]
                seed_b = trace.steps[m - 1].stage_knot[1]
                final = additive_iteration(trace.s_string, seed_a, seed_b).final
                self._report("additive_exactness").record(final == nt.q, f"{case}: iteration gave {final}")

        logger.info(f"Checked {pairs} coprime pairs with p <= {max_pq}")
        return pairs

    def run(self, max_len: Optional[int] = None, max_pq: Optional[int] = None) -> VerificationReport:
        """
        Run the whole harness.

        Raises:
            ValidationException: If max_len < 1 or max_pq < 3
        """
        max_len = settings.VERIFY_MAX_LEN if max_len is None else max_len
        max_pq = settings.VERIFY_MAX_PQ if max_pq is None else max_pq
        if max_len < 1:
            raise ValidationException(detail=f"max_len must be at least 1, got {max_len}")
        if max_pq < 3:
            raise ValidationException(detail=f"max_pq must be at least 3, got {max_pq}")

        self.invariants = {}
        for name in self.STRING_INVARIANTS + self.BOUND_INVARIANTS + self.TORUS_INVARIANTS:
            self._report(name)

        strings = self.check_strings(max_len)
        self.check_bounds(max_len)
        pairs = self.check_torus(max_pq)

        report = VerificationReport(
            max_len=max_len,
            max_pq=max_pq,
            strings_checked=strings["checked"],
            mismatches=strings["mismatches"],
            pairs_checked=pairs,
            violations=sum(self.invariants[name].violations for name in self.TORUS_INVARIANTS),
            check_violations=sum(self.invariants[name].violations for name in self.CHECK_INVARIANTS),
            invariants=list(self.invariants.values()),
        )
        for failure in report.failures():
            logger.warning(
                f"{failure.name}: {failure.violations} violations, first {failure.first_counterexample}"
            )
        logger.info(f"Verification finished: {report.summary()}")
        return report
