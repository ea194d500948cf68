"""
workflow.py - Orchestrates the certify pipeline for one construction using LangGraph
"""
from typing import Any, Dict, Literal, Optional, TypedDict

from langgraph.graph import END, StateGraph

from core.errors import GallaiInputError
from verifier import formulas
from verifier.constructions import EQUAL, GENERAL, SINGLE_STAR, SMALL_M, VerificationStatus, Witness, build_witness, \
    verify_witness
from verifier.gallai_partition import find_gallai_partition, reduced_graph


class CertifyState(TypedDict, total=False):
    construction: str
    n: Optional[int]
    m: Optional[int]
    k: int
    verbose: bool
    witness: Witness
    error: Optional[str]
    verification: Dict[str, Any]
    recovery_result: Dict[str, Any]
    partition: Optional[Dict[str, Any]]
    crosscheck: Dict[str, Any]
    certified: bool
    summary: str


def construct_node(state: CertifyState) -> CertifyState:
    """Node 1: Build the witness"""
    try:
        state['witness'] = build_witness(state['construction'], state.get('n'), state.get('m'), state.get('k', 3))
        state['error'] = None
    except GallaiInputError as e:
        state['error'] = str(e)
    return state


def verify_node(state: CertifyState) -> CertifyState:
    """Node 2: Re-run both detectors and the order check"""
    witness = verify_witness(state['witness'])
    state['witness'] = witness
    state['verification'] = {
        'status': witness.verified.value,
        'order': witness.order,
        'claimed_bound': witness.claimed_bound,
        'failures': list(witness.failures),
    }
    return state


def recovery_agent_node(state: CertifyState) -> CertifyState:
    """Node: Attempt to recover a failed witness"""
    from agents.witness_recovery_agent import WitnessRecoveryAgent

    if state.get('verbose', True):
        print("Verification failed - attempting recovery...")
    result = WitnessRecoveryAgent().diagnose_and_retry(state['witness'])
    state['recovery_result'] = {key: value for key, value in result.items() if key != 'witness'}

    if result['recovery_successful']:
        state['witness'] = result['witness']
        state['verification']['status'] = VerificationStatus.PASS.value
        state['verification']['recovered_by'] = result.get('method')
        if state.get('verbose', True):
            print(f"Recovery successful using: {result.get('method', 'unknown')}")
    elif state.get('verbose', True):
        print("Recovery failed. Next steps:")
        for instruction in result.get('instructions', []):
            print(f"  {instruction}")
    return state


def partition_node(state: CertifyState) -> CertifyState:
    """Node 3: Extract a Gallai partition of the verified witness"""
    g = state['witness'].coloring
    partition = find_gallai_partition(g) if g.order >= 2 else None
    if partition is None:
        state['partition'] = None
        return state
    summary = partition.to_dict()
    summary['reduced_palette'] = sorted(reduced_graph(g, partition).palette)
    state['partition'] = summary
    return state


def _formula_for(witness: Witness) -> formulas.FormulaResult:
    prov = witness.provenance
    if prov.construction == SMALL_M:
        return formulas.gr_small_m(prov.k, prov.n, prov.m)
    if prov.construction == EQUAL:
        return formulas.gr_equal(prov.k, prov.n)
    if prov.construction == GENERAL:
        return formulas.gr_general_lower(prov.k, prov.n, prov.m)
    if prov.construction == SINGLE_STAR:
        return formulas.gr_single_star(prov.k, prov.m)
    raise GallaiInputError(f"no formula is tied to construction {prov.construction!r}")


def crosscheck_node(state: CertifyState) -> CertifyState:
    """Node 4: Compare the witness order with the closed-form lower bound"""
    witness = state['witness']
    result = _formula_for(witness)
    state['crosscheck'] = {
        'formula': result.name,
        'formula_lower': result.lower,
        'guards_satisfied': result.guards_satisfied,
        'guard_violations': list(result.guard_violations),
        'witness_bound': witness.order + 1,
        'consistent': result.lower == witness.order + 1,
    }
    return state


def summary_node(state: CertifyState) -> CertifyState:
    """Node 5: Final summary"""
    verification = state.get('verification', {})
    crosscheck = state.get('crosscheck', {})
    state['certified'] = (
        not state.get('error')
        and verification.get('status') == VerificationStatus.PASS.value
        and bool(crosscheck.get('consistent'))
    )

    if state.get('verbose', True):
        print("\n" + "=" * 60)
        print("CERTIFY COMPLETE")
        print("=" * 60)
        print(f"Construction: {state['construction']} (n={state.get('n')}, m={state.get('m')}, k={state.get('k', 3)})")
        if state.get('error'):
            print(f"Error: {state['error']}")
        else:
            print(f"Verification: {verification.get('status', 'unknown').upper()}")
            print(f"Order: {verification.get('order')}, claimed bound: {verification.get('claimed_bound')}")
            for failure in verification.get('failures', []):
                print(f"  {failure}")
            partition = state.get('partition')
            if partition:
                print(f"Gallai partition: {partition['num_parts']} parts, palette {partition['palette']}")
            if crosscheck:
                print(f"Formula {crosscheck['formula']}: {crosscheck['formula_lower']} "
                      f"({'matches' if crosscheck['consistent'] else 'DIFFERS from'} witness bound)")

    state['summary'] = "Certified" if state['certified'] else "Not certified"
    return state


def should_verify(state: CertifyState) -> Literal["verify", "summary"]:
    """Conditional edge: a construction error goes straight to the summary"""
    return "summary" if state.get('error') else "verify"


def should_attempt_recovery(state: CertifyState) -> Literal["recovery", "partition"]:
    if state['witness'].verified == VerificationStatus.FAIL:
        return "recovery"
    return "partition"


def after_recovery(state: CertifyState) -> Literal["partition", "summary"]:
    if state.get('recovery_result', {}).get('recovery_successful'):
        return "partition"
    return "summary"


def create_workflow():
    """Create the certify workflow"""
    workflow = StateGraph(CertifyState)

    workflow.add_node("construct", construct_node)
    workflow.add_node("verify", verify_node)
    workflow.add_node("recover", recovery_agent_node)
    workflow.add_node("partition", partition_node)
    workflow.add_node("crosscheck", crosscheck_node)
    workflow.add_node("summary", summary_node)

    workflow.set_entry_point("construct")
    workflow.add_conditional_edges(
        "construct",
        should_verify,
        {
            "verify": "verify",
            "summary": "summary"
        }
    )
    workflow.add_conditional_edges(
        "verify",
        should_attempt_recovery,
        {
            "recovery": "recover",
            "partition": "partition"
        }
    )
    workflow.add_conditional_edges(
        "recover",
        after_recovery,
        {
            "partition": "partition",
            "summary": "summary"
        }
    )
    workflow.add_edge("partition", "crosscheck")
    workflow.add_edge("crosscheck", "summary")
    workflow.add_edge("summary", END)

    return workflow.compile()


def certify_construction(construction: str, n: Optional[int] = None, m: Optional[int] = None, k: int = 3,
                         verbose: bool = True) -> Dict[str, Any]:
    """
    Build, verify, partition and cross-check one construction

    Returns:
        The final pipeline state; `certified` is True only when every stage passed
    """
    initial_state: CertifyState = {
        'construction': construction,
        'n': n,
        'm': m,
        'k': k,
        'verbose': verbose,
    }
    return create_workflow().invoke(initial_state)
