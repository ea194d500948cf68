"""
main.py - Build, verify and search Gallai colourings for star-union Ramsey numbers
"""
import argparse
import sys
from typing import List, Optional

from cli.commands import EXIT_INPUT_ERROR, run_command
from core.config import configure_logging, load_config
from core.errors import GallaiInputError
from verifier.formulas import FORMULAS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Gallai-Ramsey numbers of star unions: witnesses, verification, partitions and search',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Build and save the equal-case witness
  python main.py construct equal --n 3 --k 3 --out equal_3_3.txt

  # Check a colouring against K(1,3) ∪ K(1,3)
  python main.py verify equal_3_3.txt --n 3 --m 3

  # Evaluate a closed form
  python main.py formula gr-equal --n 7 --k 4

  # Smallest N at which every 2-colouring of K_N contains K(1,1) ∪ K(1,1)
  python main.py search threshold --k 2 --pattern 1,1 --mode ramsey --max 6

  # Run the whole certify pipeline for one construction
  python main.py certify small-m --n 23 --m 3 --k 3

Exit codes: 0 holds / computed, 1 refuted with certificate, 2 input error, 3 inconclusive
"""
    )
    parser.add_argument('--config', default='config.yaml', help='Path to the YAML configuration file')
    parser.add_argument('--json', action='store_true', help='Emit reports as JSON')
    parser.add_argument('--verbose', '-v', action='store_true', help='Log progress at INFO level')
    parser.add_argument('--debug', action='store_true', help='Log at DEBUG level')
    parser.add_argument('--quiet', '-q', action='store_true', help='No traceback on unexpected errors')

    sub = parser.add_subparsers(dest='command', required=True)

    construct = sub.add_parser('construct', help='Build a witness colouring')
    construct.add_argument('kind', nargs='?', default='small-m',
                           choices=['small-m', 'equal', 'general', 'pentagon', 'star', 'random'])
    construct.add_argument('--n', type=int)
    construct.add_argument('--m', type=int)
    construct.add_argument('--k', type=int, default=3)
    construct.add_argument('--sizes', help='Five comma-separated part sizes (pentagon)')
    construct.add_argument('--arrangement', help='Pentagon position of each part, e.g. 0,2,1,3,4')
    construct.add_argument('--order', type=int, help='Vertex count (random)')
    construct.add_argument('--seed', type=int, default=0, help='Random seed (random)')
    construct.add_argument('--depth', type=int, default=3, help='Substitution depth (random)')
    construct.add_argument('--out', help="Coloring file to write ('-' for standard output)")
    construct.add_argument('--grid', action='store_true', help='Build and verify the whole witness grid')

    verify = sub.add_parser('verify', help='Check a coloring file for the two forbidden patterns')
    verify.add_argument('path')
    verify.add_argument('--n', type=int, required=True)
    verify.add_argument('--m', type=int, required=True)
    verify.add_argument('--claimed', type=int, help='Bound the colouring is claimed to certify')

    partition = sub.add_parser('partition', help='Extract a Gallai partition')
    partition.add_argument('path')

    formula = sub.add_parser('formula', help='Evaluate a closed-form result')
    formula.add_argument('name', choices=sorted(FORMULAS))
    formula.add_argument('--n', type=int)
    formula.add_argument('--m', type=int)
    formula.add_argument('--k', type=int)

    search = sub.add_parser('search', help='Exhaustive search for avoiding colourings')
    search.add_argument('action', choices=['decide', 'threshold'])
    search.add_argument('--k', type=int, required=True)
    search.add_argument('--pattern', required=True, help='Star sizes as n,m')
    search.add_argument('--mode', choices=['gallai', 'ramsey'], default='gallai')
    search.add_argument('--order', type=int, help='Host order N (decide)')
    search.add_argument('--max', type=int, default=8, help='Largest N to try (threshold)')
    search.add_argument('--budget', type=int, help='Node budget (default from config)')
    search.add_argument('--time-budget', type=float, help='Wall-clock budget in seconds')
    search.add_argument('--threads', type=int, help='Worker processes (fallback GALLAI_THREADS)')
    search.add_argument('--no-prune', action='store_true', help='Disable pruning and isomorph rejection')
    search.add_argument('--checkpoint', help='Checkpoint file to write')
    search.add_argument('--pause-after', type=int, help='Pause after this many nodes')
    search.add_argument('--resume', help='Resume from this checkpoint file')

    stability = sub.add_parser('stability', help='Check the five-part stability conclusion')
    stability.add_argument('path', nargs='?')
    stability.add_argument('--n', type=int)
    stability.add_argument('--r', type=int)
    stability.add_argument('--sizes', help='Build a pentagon blow-up with these five part sizes instead')
    stability.add_argument('--sweep', action='store_true', help='Sweep near-balanced pentagon blow-ups')
    stability.add_argument('--n-min', type=int)
    stability.add_argument('--n-max', type=int)

    certify = sub.add_parser('certify', help='Run the build/verify/partition/cross-check pipeline')
    certify.add_argument('kind', choices=['small-m', 'equal', 'general', 'star'])
    certify.add_argument('--n', type=int)
    certify.add_argument('--m', type=int)
    certify.add_argument('--k', type=int, default=3)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line interface"""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config)
    except GallaiInputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    configure_logging(config.logging, verbose=args.verbose, debug=args.debug)

    try:
        return run_command(args, config)
    except KeyboardInterrupt:
        print("Interrupted by user")
        return 130
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        if not args.quiet:
            import traceback
            traceback.print_exc()
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
