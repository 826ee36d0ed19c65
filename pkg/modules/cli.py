"""
Command-line front end. Every command prints one VerificationReport (as text
or canonical JSON) and exits 0 when it passes, 1 when it fails and 2 on
usage or input errors.
"""
import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

import pandas as pd

from modules.category_o import DEFAULT_CONTROLS, DEFAULT_DIM_CAP, DEFAULT_SEED, classify_example, classify_top
from modules.determinants import (coexisting_singulars, determinant_spec, determinant_vector, lowering_factor,
                                  negative_control, predicted_lowering_residual, theta_lowering_factor,
                                  verify_theorem)
from modules.errors import AlgebraError, SpecError
from modules.lie import build_algebra, combination_to_text
from modules.reports import VerificationReport, combine
from modules.scalars import format_rational, parse_rational
from modules.utils import ResultCache, cache_key
from modules.zhu import (project_F, verify_phi_bracket, verify_phi_kills_determinant, verify_phi_multiplicative,
                         verify_zhu_generator)

logger = logging.getLogger()

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    action: str
    kind: str = 'C'
    rank: int = 3
    m: Optional[int] = None
    n: Optional[int] = None
    level: Optional[str] = None
    json: bool = False
    timing: bool = False
    cache_dir: Optional[str] = None
    use_cache: bool = True
    seed: int = DEFAULT_SEED
    controls: int = DEFAULT_CONTROLS
    dim_cap: int = DEFAULT_DIM_CAP
    max_n: int = 2
    quiet: bool = False

    @classmethod
    def from_args(cls, args):
        return cls(command=args.command,
                   action=args.action,
                   kind=args.type,
                   rank=args.rank,
                   m=args.m,
                   n=args.n,
                   level=args.level,
                   json=args.json,
                   timing=args.timing,
                   cache_dir=args.cache_dir,
                   use_cache=not args.no_cache,
                   seed=args.seed,
                   controls=args.controls,
                   dim_cap=args.dim_cap,
                   max_n=args.max_n,
                   quiet=args.quiet)

    @property
    def rational_level(self):
        if self.level is None:
            return None
        try:
            return parse_rational(self.level)
        except (ValueError, ZeroDivisionError):
            raise SpecError('level must be a rational such as -1/2, got {!r}'.format(self.level))

    def cache_command(self):
        """
        The command part of the report cache key: every option that changes the report.
        """
        parts = [self.command, self.action]
        if self.level is not None:
            parts.append('k{}'.format(self.rational_level).replace('/', '_'))
        if self.action == 'suite':
            parts.append('max{}'.format(self.max_n))
        if self.command == 'classify':
            parts.append('seed{}-controls{}'.format(self.seed, self.controls))
        return '-'.join(parts)

    def spec(self):
        if self.m is None or self.n is None:
            raise SpecError('{} {} needs -m and -n'.format(self.command, self.action))
        return determinant_spec(self.kind, self.rank, self.m, self.n)


COMMANDS = {'alg': ['info'],
            'singular': ['verify', 'factor', 'suite', 'coexist'],
            'zhu': ['project', 'phi'],
            'classify': ['exc6', 'top']}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--type', choices=['A', 'C'], default='C', help='algebra type: A (sl_l) or C (sp_2l)')
    common.add_argument('--rank', type=int, default=3, help='number of oscillator pairs l')
    common.add_argument('-m', type=int, help='determinant size')
    common.add_argument('-n', type=int, help='power of the determinant')
    common.add_argument('--level', help='rational level, e.g. -1/2')
    common.add_argument('--json', action='store_true', help='print the report as JSON')
    common.add_argument('--timing', action='store_true', help='include timing_ms in the report')
    common.add_argument('--cache-dir', help='cache directory (default $DSV_CACHE_DIR or ~/.cache)')
    common.add_argument('--no-cache', action='store_true', help='neither read nor write the cache')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='seed of the negative controls')
    common.add_argument('--controls', type=int, default=DEFAULT_CONTROLS, help='number of negative controls')
    common.add_argument('--dim-cap', type=int, default=DEFAULT_DIM_CAP, help='largest top level to generate')
    common.add_argument('--max-n', type=int, default=2, help='largest power in singular suite')
    common.add_argument('--quiet', action='store_true', help='only log warnings')

    parser = argparse.ArgumentParser(prog='dsv', description='Determinant singular vectors in affine vacuum modules')
    commands = parser.add_subparsers(dest='command', required=True)
    for command, actions in COMMANDS.items():
        sub = commands.add_parser(command).add_subparsers(dest='action', required=True)
        for action in actions:
            sub.add_parser(action, parents=[common])
    return parser


def _cached_vector(config, spec, cache):
    module = spec.module
    return cache.fetch(cache_key(spec.kind, spec.rank, spec.m, spec.n, 'vector'),
                       lambda: determinant_vector(spec),
                       lambda state: state.to_payload(),
                       module.state_from_payload)


def _alg_info(config, cache):
    table = build_algebra(config.kind, config.rank)
    gram = table.gram_matrix().det()
    pairs = [(p, q) for p in range(table.dim) for q in range(p, table.dim)]
    report = VerificationReport(claim='structure-table',
                                statement='structure constants and invariant form',
                                passed=gram != 0,
                                witness=None if gram != 0 else {'gram_determinant': '0'},
                                parameters={'type': table.kind, 'rank': table.rank, 'dim': table.dim,
                                            'theta': str(table.theta),
                                            'beta': format_rational(table.form(table.minus_theta_vector,
                                                                               table.theta_vector)),
                                            'gram_determinant': str(gram)},
                                details={'simple_roots': [str(alpha) for alpha in table.simple_roots],
                                         'basis': list(table.labels),
                                         'brackets': [[table.labels[p], table.labels[q],
                                                       combination_to_text(table, table.bracket(p, q))]
                                                      for p, q in pairs if table.bracket(p, q)],
                                         'form': [[table.labels[p], table.labels[q], format_rational(table.form(p, q))]
                                                  for p, q in pairs if table.form(p, q)]})
    report.tables.extend([table.bracket_table(), table.form_table()])
    return report


def _singular_verify(config, cache):
    spec = config.spec()
    return verify_theorem(spec, config.rational_level, _cached_vector(config, spec, cache))


def _singular_factor(config, cache):
    spec = config.spec()
    report = theta_lowering_factor(spec, _cached_vector(config, spec, cache))
    level = config.rational_level
    if level is not None:
        report.parameters['level'] = str(level)
        report.parameters['residual_at_level'] = str(predicted_lowering_residual(spec, level))
    return report


def _grid(config):
    sizes = range(1, config.rank + 1) if config.kind == 'C' else range(1, config.rank // 2 + 1)
    return [determinant_spec(config.kind, config.rank, m, n) for m in sizes for n in range(1, config.max_n + 1)]


def _singular_suite(config, cache):
    reports, rows = [], []
    for spec in _grid(config):
        vector = _cached_vector(config, spec, cache)
        checks = [verify_theorem(spec, vector=vector),
                  negative_control(spec, vector),
                  theta_lowering_factor(spec, vector)]
        reports.extend(checks)
        rows.append({'m': spec.m, 'n': spec.n, 'k_mn': format_rational(spec.level), 'terms': len(vector),
                     'singular': checks[0].verdict, 'control': checks[1].verdict, 'factor': checks[2].verdict})
    report = combine('singular-suite',
                     'determinant vectors are singular exactly at k_mn with the predicted lowering factor',
                     reports,
                     parameters={'type': config.kind, 'rank': config.rank, 'max_n': config.max_n,
                                 'beta': format_rational(lowering_factor(_grid(config)[0]))})
    report.details = rows
    return report


def _singular_coexist(config, cache):
    level = config.rational_level
    if level is None:
        raise SpecError('singular coexist needs --level')
    specs = coexisting_singulars(config.kind, config.rank, level)
    if not specs:
        raise SpecError('no admissible (m, n) has level {} in type {} rank {}'.format(level, config.kind, config.rank))
    reports = [verify_theorem(spec, vector=_cached_vector(config, spec, cache)) for spec in specs]
    weights = [r.parameters['weight'] for r in reports]
    distinct = len(set(weights)) == len(weights)
    reports.append(VerificationReport(claim='distinct-weights',
                                      statement='coexisting singular vectors have pairwise distinct weights',
                                      passed=distinct,
                                      witness=None if distinct else {'weights': weights}))
    return combine('coexisting-singulars',
                   'several determinant vectors are singular at level {}'.format(level),
                   reports,
                   parameters={'type': config.kind, 'rank': config.rank, 'level': str(level),
                               'pairs': ['({},{})'.format(s.m, s.n) for s in specs], 'weights': weights})


def _zhu_project(config, cache):
    spec = config.spec()
    report = verify_zhu_generator(spec)
    projected = project_F(_cached_vector(config, spec, cache).specialize(spec.level))
    report.details = {'projection': projected.to_payload()}
    return report


def _zhu_phi(config, cache):
    table = build_algebra(config.kind, config.rank)
    reports = [verify_phi_bracket(table), verify_phi_multiplicative(table)]
    if config.m is not None and config.n is not None:
        reports.append(verify_phi_kills_determinant(config.spec()))
    return combine('phi-homomorphism', 'the oscillator realization extends to U(g) and kills (Delta_m)^n', reports,
                   parameters={'type': config.kind, 'rank': config.rank})


def _classify_exc6(config, cache):
    return classify_example(seed=config.seed, controls=config.controls, dim_cap=config.dim_cap)


def _classify_top(config, cache):
    return classify_top(config.spec(), config.dim_cap)


HANDLERS = {('alg', 'info'): _alg_info,
            ('singular', 'verify'): _singular_verify,
            ('singular', 'factor'): _singular_factor,
            ('singular', 'suite'): _singular_suite,
            ('singular', 'coexist'): _singular_coexist,
            ('zhu', 'project'): _zhu_project,
            ('zhu', 'phi'): _zhu_phi,
            ('classify', 'exc6'): _classify_exc6,
            ('classify', 'top'): _classify_top}


def render(report, config):
    if config.json:
        return json.dumps(report.to_dict(timing=config.timing), indent=2, sort_keys=True, ensure_ascii=False)
    text = report.summary()
    if isinstance(report.details, list) and report.details and all(isinstance(d, dict) for d in report.details):
        frame = pd.DataFrame(report.details)
        text += '\n' + frame.to_string(index=False)
    for table in report.tables:
        text += '\n' + table.to_string()
    for warning in report.warnings:
        text += '\nwarning: ' + warning
    if config.timing and report.timing_ms is not None:
        text += '\ntiming: {} ms'.format(report.timing_ms)
    return text


def join_negative_level(argv):
    """
    ``--level -1/2`` -> ``--level=-1/2``; argparse reads ``-1/2`` as an option otherwise.
    """
    joined, tokens = [], iter(argv)
    for token in tokens:
        if token == '--level':
            value = next(tokens, None)
            if value is not None and value.startswith('-'):
                token = '--level=' + value
            elif value is not None:
                joined.append(token)
                token = value
        joined.append(token)
    return joined


def run(argv=None, stdout=None):
    """
    :return: exit status
    """
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(join_negative_level(argv))
    except SystemExit as error:
        return EXIT_USAGE if error.code else EXIT_PASS
    config = RunConfig.from_args(args)
    if config.quiet:
        logger.setLevel(logging.WARNING)
    cache = ResultCache(config.cache_dir, enabled=config.use_cache)
    try:
        handler = HANDLERS[(config.command, config.action)]
        key = cache_key(config.kind, config.rank, config.m or 0, config.n or 0, config.cache_command())
        report = cache.fetch(key, lambda: handler(config, cache),
                             VerificationReport.to_payload, VerificationReport.from_payload)
    except AlgebraError as error:
        print('error: {}'.format(error), file=sys.stderr)
        return EXIT_USAGE
    report.warnings.extend(w for w in cache.warnings if w not in report.warnings)
    print(render(report, config), file=stdout)
    return EXIT_PASS if report.passed else EXIT_FAIL
