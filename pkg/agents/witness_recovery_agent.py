"""
Agent to handle witnesses that fail self-verification.
"""
import logging
from typing import Any, Dict

from core.errors import GallaiInputError
from verifier.constructions import (GENERAL, SINGLE_STAR, SMALL_M, VerificationStatus, Witness,
                                    build_witness, distinct_arrangements, verify_witness)

logger = logging.getLogger(__name__)

PENTAGON_BASED = (SMALL_M, GENERAL, SINGLE_STAR)


class WitnessRecoveryAgent:
    """Diagnoses failed witnesses and retries the ones a different part arrangement might fix"""

    def diagnose_and_retry(self, witness: Witness) -> Dict[str, Any]:
        """Main recovery method"""
        if witness.verified == VerificationStatus.UNCHECKED:
            witness = verify_witness(witness)
        if witness.verified == VerificationStatus.PASS:
            return {"recovery_successful": True, "method": "already_verified", "failure_type": None,
                    "witness": witness}

        failure_type = self._classify_failure(witness)
        logger.info("witness failed with %s, attempting recovery", failure_type)

        if failure_type == "star_union" and witness.provenance.construction in PENTAGON_BASED:
            return self._handle_star_union(witness)
        elif failure_type == "rainbow_triangle":
            return self._handle_rainbow_triangle(witness)
        elif failure_type == "order_mismatch":
            return self._handle_order_mismatch(witness)
        else:
            return self._fallback_to_report(witness, failure_type)

    def _classify_failure(self, witness: Witness) -> str:
        """Classify the failure from the certificates the verifier attached"""
        if witness.rainbow_certificate is not None:
            return "rainbow_triangle"
        elif witness.star_union_certificate is not None or witness.star_certificate is not None:
            return "star_union"
        elif witness.order != witness.claimed_bound - 1:
            return "order_mismatch"
        else:
            return "unknown"

    def _handle_star_union(self, witness: Witness) -> Dict[str, Any]:
        """Try one arrangement of the parts per dihedral class"""
        prov = witness.provenance
        arrangements = distinct_arrangements(prov.part_sizes)
        current = tuple(prov.arrangement) if prov.arrangement is not None else tuple(range(5))
        if len(arrangements) < 2:
            logger.info("parts %s have a single arrangement class; nothing to retry", list(prov.part_sizes))
            return self._star_union_failure(
                witness,
                f"parts {list(prov.part_sizes)} have a single arrangement class, so no rearrangement was tried",
                0,
                "Every arrangement of these parts is a rotation or reflection of this one; change the parameters instead")

        tried = 0
        for arrangement in arrangements:
            if tuple(arrangement) == current:
                continue
            tried += 1
            try:
                candidate = build_witness(prov.construction, prov.n, prov.m, prov.k, arrangement)
            except GallaiInputError as e:
                logger.debug("arrangement %s rejected: %s", arrangement, e)
                continue
            if candidate.verified == VerificationStatus.PASS:
                logger.info("arrangement %s verifies", arrangement)
                return {
                    "recovery_successful": True,
                    "failure_type": "star_union",
                    "method": f"rearranged_parts:{','.join(map(str, arrangement))}",
                    "arrangements_tried": tried,
                    "witness": candidate,
                }
        return self._star_union_failure(
            witness, f"all {len(arrangements)} part arrangements contain the target pattern", tried,
            f"Tried {tried} other arrangement(s) of the parts; each contains the pattern")

    def _star_union_failure(self, witness: Witness, error: str, tried: int, first_step: str) -> Dict[str, Any]:
        prov = witness.provenance
        certificate = witness.star_union_certificate or witness.star_certificate
        return {
            "recovery_successful": False,
            "failure_type": "star_union",
            "error": error,
            "arrangements_tried": tried,
            "certificate": certificate.to_dict() if hasattr(certificate, "to_dict") else list(certificate),
            "instructions": [
                first_step,
                f"Parameters n={prov.n}, m={prov.m}, k={prov.k} lie outside the range this construction covers",
                "Inspect the certificate: the two centres and their leaves share one colour",
                "Try `search decide` at this order for a small enough instance",
            ],
        }

    def _handle_rainbow_triangle(self, witness: Witness) -> Dict[str, Any]:
        return {
            "recovery_successful": False,
            "failure_type": "rainbow_triangle",
            "error": "the colouring is not a Gallai colouring",
            "certificate": list(witness.rainbow_certificate),
            "instructions": [
                "Pentagon blow-ups with fresh apex colours never contain a rainbow triangle",
                "Check that apex colours were not reused and the input file was not edited",
            ],
        }

    def _handle_order_mismatch(self, witness: Witness) -> Dict[str, Any]:
        return {
            "recovery_successful": False,
            "failure_type": "order_mismatch",
            "error": f"order {witness.order} does not certify the claimed bound {witness.claimed_bound}",
            "instructions": [
                f"A witness on {witness.order} vertices certifies at most {witness.order + 1}",
                "Compare the claimed bound with the `formula` command for these parameters",
            ],
        }

    def _fallback_to_report(self, witness: Witness, failure_type: str) -> Dict[str, Any]:
        """Fallback to the verifier's own failure list"""
        return {
            "recovery_successful": False,
            "failure_type": failure_type,
            "error": "Could not auto-recover",
            "instructions": list(witness.failures) or ["Re-run `verify` on the witness file"],
        }
