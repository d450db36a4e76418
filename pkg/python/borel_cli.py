#!/usr/bin/env python3
"""
Command-line front end for the t-spread principal Borel ideal toolkit

Every subcommand builds a report dict; ``run`` maps it (or the raised error) to an
exit status: 0 ok, 1 claim failure, 2 usage error, 3 guard refusal.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from tabulate import tabulate

sys.path.insert(0, str(Path(__file__).parent))

from processors.borel import BorelInstance, closure_oracle, generators, is_veronese, uncovered_variables
from processors.dual import (dual_generators, facet_oracle, facets, krull_dimension, linear_quotients_check,
                             minimal_primes, scm_order, tagged_dual_generators)
from processors.oracle import ideal_equal, intersect_components, irreducible_decomposition
from processors.powers import PowerAnalyzer, associated_primes, oracles_agree
from processors.rees import (ell_exchange_check, fiber_dimension, lex_quadratic_witness, reduced_gb,
                             verify_gb, verify_kernel)
from processors.sortnet import sort_tuple, sorted_tuple_closed_form
from reproduction import reproduce_all
from utils.errors import (BorelError, ClaimFailure, GuardExceededError, HypothesisError, InconclusiveError,
                          InstanceError)
from utils.file_utils import FileUtils
from utils.monomial import Monomial
from utils.run_config import GuardLimits, RunConfig
from utils.text_utils import TextUtils

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CLAIM = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _instance(config: RunConfig) -> BorelInstance:
    if config.n is None or config.t is None or not config.u:
        raise InstanceError("This command needs --n, --t and --u")
    return BorelInstance(config.n, config.t, tuple(config.u))


def cmd_gens(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    gens = generators(inst)
    report = {'instance': inst.to_dict(), 'count': len(gens), 'generators': [g.to_text() for g in gens],
              'success': True}
    if config.verify:
        report['closure_matches'] = gens == closure_oracle(inst)
        report['success'] = report['closure_matches']
    return report


def cmd_dual(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    tagged = tagged_dual_generators(inst)
    return {'instance': inst.to_dict(),
            'dual': [{'monomial': g.monomial.to_text(), 'form': g.form} for g in tagged],
            'dual_text': TextUtils.format_monomials([g.monomial for g in tagged]),
            'uncovered': list(uncovered_variables(inst)), 'success': True}


def cmd_facets(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    found = facets(inst)
    report = {'instance': inst.to_dict(), 'facets': [f.to_dict() for f in found],
              'minimal_primes': [list(p) for p in minimal_primes(inst)],
              'dimension': krull_dimension(inst), 'success': True}
    if config.verify:
        report['oracle_matches'] = sorted(f.members for f in found) == facet_oracle(inst)
        report['success'] = report['oracle_matches']
    return report


def cmd_scm_check(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    duals = dual_generators(inst)
    if config.inject_fault:
        logger.warning("Fault injection: scanning facets without the last minimal generator")
        duals = [Monomial.from_indices(sorted(set(range(1, inst.n + 1)) - set(members)), inst.n)
                 for members in facet_oracle(inst, generators(inst)[:-1])]
    try:
        ordered = scm_order(duals, inst)
    except InstanceError as e:
        return {'instance': inst.to_dict(), 'success': False, 'error': str(e), 'error_type': 'ClaimFailure'}
    result = linear_quotients_check([g.monomial for g in ordered])
    return {
        'instance': inst.to_dict(),
        'order': [{'generator': g.monomial.to_text(), 'form': g.form} for g in ordered],
        'linear_quotients': result.to_dict(),
        'success': result.success,
    }


def cmd_sort(config: RunConfig) -> Dict[str, Any]:
    if not config.monomials:
        raise InstanceError("sort needs --monomials")
    monomials = TextUtils.parse_monomial_list(config.monomials, config.n)
    sorted_tuple = sort_tuple(monomials)
    closed = sorted_tuple_closed_form(monomials)
    return {'input': [m.to_text() for m in monomials],
            'sorted': [m.to_text() for m in sorted_tuple.monomials],
            'closed_form_matches': sorted_tuple == closed,
            'success': sorted_tuple == closed}


def cmd_rees_gb(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    gb = reduced_gb(inst)
    report = {
        'instance': inst.to_dict(),
        'binomials': [b.to_dict() for b in gb],
        'sorting_relations': sum(1 for b in gb if b.family == 'sorting'),
        'x_relations': sum(1 for b in gb if b.family == 'x'),
        'kernel_ok': all(verify_kernel(b, inst) for b in gb),
    }
    report['success'] = report['kernel_ok']
    if config.verify:
        verification = verify_gb(inst, gb)
        report['verification'] = verification.to_dict()
        if verification.inconclusive:
            raise InconclusiveError(f"Buchberger check inconclusive at pair {verification.buchberger.failing_pair}")
        report['success'] = verification.verified and verification.x_condition and verification.reduced
    return report


def cmd_ell_exchange(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    result = ell_exchange_check(inst, config.N, config.guards.max_power_generators)
    return {'instance': inst.to_dict(), 'N': config.N, **result.to_dict(), 'success': result.holds}


def cmd_lex_witness(config: RunConfig) -> Dict[str, Any]:
    if not config.has_instance:
        report = lex_quadratic_witness()
        return {**report.to_dict(), 'success': report.not_quadratic}
    inst = _instance(config)
    if bool(config.monomials) != bool(config.generators):
        raise InstanceError("Give the cubic in --monomials together with its partner in --gens")
    if config.monomials:
        cubic = TextUtils.parse_monomial_list(config.monomials, inst.n)
        partner = TextUtils.parse_monomial_list(config.generators, inst.n)
        report = lex_quadratic_witness(inst, cubic, partner)
    else:
        report = lex_quadratic_witness(inst)
    return {**report.to_dict(), 'success': report.not_quadratic if report.has_cubic else True}


def cmd_fiber_dim(config: RunConfig) -> Dict[str, Any]:
    inst = _instance(config)
    rank = fiber_dimension(inst)
    report = {'instance': inst.to_dict(), 'fiber_dimension': rank, 'n': inst.n, 'success': rank <= inst.n}
    if is_veronese(inst):
        report['veronese_expected'] = inst.n - inst.d + 1
    return report


def cmd_power_depth(config: RunConfig) -> Dict[str, Any]:
    analyzer = PowerAnalyzer(_instance(config), config.guards)
    report = {'instance': analyzer.inst.to_dict(), **analyzer.depth(config.k).to_dict(), 'success': True}
    obstruction = analyzer.veronese_obstruction(config.k)
    if obstruction is not None:
        report['veronese_obstruction'] = obstruction
    return report


def cmd_limdepth_witness(config: RunConfig) -> Dict[str, Any]:
    analyzer = PowerAnalyzer(_instance(config), config.guards)
    witness = analyzer.limdepth(config.k)
    return {'instance': analyzer.inst.to_dict(), **witness.to_dict(), 'success': witness.verified}


def cmd_ass(config: RunConfig) -> Dict[str, Any]:
    guards = config.guards
    if config.generators and not config.has_instance:
        gens = TextUtils.parse_monomial_list(config.generators, config.n)
        n = gens[0].n
        primes = associated_primes(gens, n, guards.max_decomposition_vars, guards.max_components)
        report = {'generators': [g.to_text() for g in gens], 'associated_primes': [list(p) for p in primes],
                  'success': True}
        if config.verify:
            report['oracles_agree'] = oracles_agree(gens, n, primes, guards.max_witness_box)
    else:
        analyzer = PowerAnalyzer(_instance(config), guards)
        primes = analyzer.associated_primes(config.k)
        report = {'instance': analyzer.inst.to_dict(), 'k': config.k,
                  'associated_primes': [list(p) for p in primes], 'success': True}
        if config.verify:
            report['oracles_agree'] = analyzer.oracles_agree(config.k, primes)
    if config.verify:
        report['success'] = report['oracles_agree']
    return report


def cmd_persistence(config: RunConfig) -> Dict[str, Any]:
    analyzer = PowerAnalyzer(_instance(config), config.guards)
    result = analyzer.persistence(config.kmax, cross_check=config.verify)
    success = result.holds and result.oracle_agreement is not False
    return {'instance': analyzer.inst.to_dict(), 'kmax': config.kmax, **result.to_dict(), 'success': success}



def cmd_reproduce(config: RunConfig) -> Dict[str, Any]:
    return reproduce_all(config.seed, quick=config.quick, inject_fault=config.inject_fault, guards=config.guards)


def cmd_oracle_decompose(config: RunConfig) -> Dict[str, Any]:
    if not config.generators:
        raise InstanceError("oracle decompose needs --gens")
    gens = TextUtils.parse_monomial_list(config.generators, config.n)
    n = gens[0].n
    guards = config.guards
    components = irreducible_decomposition(gens, n, guards.max_decomposition_vars, guards.max_components)
    sound = ideal_equal(intersect_components(components, n), gens, n)
    return {'generators': [g.to_text() for g in gens], 'components': [c.to_dict() for c in components],
            'intersection_matches': sound, 'success': sound}


COMMANDS: Dict[str, Callable[[RunConfig], Dict[str, Any]]] = {
    'gens': cmd_gens,
    'dual': cmd_dual,
    'facets': cmd_facets,
    'scm-check': cmd_scm_check,
    'sort': cmd_sort,
    'rees-gb': cmd_rees_gb,
    'ell-exchange': cmd_ell_exchange,
    'lex-witness': cmd_lex_witness,
    'fiber-dim': cmd_fiber_dim,
    'power-depth': cmd_power_depth,
    'limdepth-witness': cmd_limdepth_witness,
    'ass': cmd_ass,
    'persistence': cmd_persistence,
    'reproduce': cmd_reproduce,
    'oracle-decompose': cmd_oracle_decompose,
}


def run(command: str, config: RunConfig) -> Tuple[int, Dict[str, Any]]:
    """
    Dispatch one command

    Returns:
        (exit status, report); failed reports carry 'error' and 'error_type'
    """
    handler = COMMANDS.get(command)
    if handler is None:
        return EXIT_USAGE, {'command': command, 'success': False,
                            'error': f"Unknown command: {command}", 'error_type': 'InstanceError'}
    try:
        report = handler(config)
        status = EXIT_OK if report.get('success') else EXIT_CLAIM
    except (InstanceError, HypothesisError) as e:
        report, status = {'success': False, 'error': str(e), 'error_type': type(e).__name__}, EXIT_USAGE
    except GuardExceededError as e:
        report, status = {'success': False, 'error': str(e), 'error_type': type(e).__name__}, EXIT_GUARD
    except (ClaimFailure, InconclusiveError) as e:
        report, status = {'success': False, 'error': str(e), 'error_type': type(e).__name__}, EXIT_CLAIM
    report['command'] = command
    if status != EXIT_OK:
        logger.info(f"{command} finished with status {status}: {report.get('error', 'claim not confirmed')}")
    return status, FileUtils.to_native(report)


def render_text(report: Dict[str, Any]) -> str:
    """Human-readable form: scalars as lines, lists of records as tables"""
    lines = [f"{'✅' if report.get('success') else '❌'} {report.get('command', '')}"]
    for key in sorted(report):
        if key in ('command', 'success'):
            continue
        value = report[key]
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{key}:")
            lines.append(tabulate(value, headers="keys", tablefmt="simple"))
        elif isinstance(value, list):
            lines.append(f"{key}: {', '.join(str(v) for v in value)}")
        elif isinstance(value, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={v}" for k, v in sorted(value.items())))
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Compute with t-spread principal Borel ideals B_t(u)',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s dual --n 9 --t 2 --u 2,4,9
  %(prog)s power-depth --n 8 --t 2 --u 3,5,8 --k 3 --json
  %(prog)s oracle decompose --gens "x1^2,x1*x2"
        """
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, help='Number of variables')
    common.add_argument('--t', type=int, help='Spread parameter')
    common.add_argument('--u', type=TextUtils.parse_index_list, default=[],
                        help='Support of u as 1-based indices, e.g. 2,4,9')
    common.add_argument('--k', type=int, default=1, help='Power of the ideal (default: 1)')
    common.add_argument('--kmax', type=int, default=3, help='Largest power for persistence (default: 3)')
    common.add_argument('--N', type=int, default=2, help='Degree of standard monomials (default: 2)')
    common.add_argument('--seed', type=int, default=20240101, help='Seed for randomized suites')
    common.add_argument('--monomials', help='Comma-separated monomials, e.g. "x2*x4*x6,x1*x3*x9"')
    common.add_argument('--gens', dest='generators', help='Comma-separated ideal generators')
    common.add_argument('--verify', action='store_true', help='Cross-check against the brute-force oracle')
    common.add_argument('--inject-fault', action='store_true', help='Drop a generator before checking')
    common.add_argument('--quick', action='store_true', help='Reduced instance counts (reproduce)')
    common.add_argument('--json', action='store_true', help='Print the report as JSON')
    common.add_argument('--output', help='Also write the JSON report to this file or directory')
    common.add_argument('--verbose', action='store_true', help='Debug logging on stderr')

    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        if name == 'oracle-decompose':
            continue
        sub.add_parser(name, parents=[common])
    oracle = sub.add_parser('oracle')
    oracle_sub = oracle.add_subparsers(dest='action', required=True)
    oracle_sub.add_parser('decompose', parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        n=args.n, t=args.t, u=list(args.u), k=args.k, kmax=args.kmax, N=args.N, seed=args.seed,
        output_format="json" if args.json else "text",
        monomials=args.monomials, generators=args.generators, verify=args.verify,
        inject_fault=args.inject_fault, quick=args.quick, output_file=args.output,
        guards=GuardLimits.from_env(),
    )


def _write_report(report: Dict[str, Any], config: RunConfig, command: str) -> None:
    target = Path(config.output_file)
    if target.suffix != '.json':
        FileUtils.ensure_directory(target)
        if config.has_instance and config.n is not None and config.t is not None:
            target = target / FileUtils.report_filename(command, config.n, config.t, config.u)
        else:
            target = target / f"{command}.json"
    FileUtils.write_json(report, target)
    logger.info(f"Report written to {target}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line interface; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s - %(levelname)s - %(message)s', stream=sys.stderr)

    command = 'oracle-decompose' if args.command == 'oracle' else args.command
    try:
        config = config_from_args(args)
    except BorelError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    status, report = run(command, config)
    if config.output_format == "json":
        print(FileUtils.dumps(report))
    else:
        print(render_text(report))
    if config.output_file:
        _write_report(report, config, command)
    return status


if __name__ == "__main__":
    sys.exit(main())
