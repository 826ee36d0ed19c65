import time
from contextlib import contextmanager

import pandas as pd
import sympy

from modules import __version__

FORMAT_VERSION = 2

ANCHORS = {'structure-table': 'oscillator realization of sp_2l and sl_l',
           'singular-vector': 'singular vectors of the vacuum module',
           'determinant-singular-vector': 'determinant singular vector theorem',
           'negative-control': 'determinant singular vector theorem',
           'lowering-factor': 'action of x_-theta(1) on determinant vectors',
           'entries-commute': 'commuting matrix entries',
           'raising-commutes': 'e_i(0) commutes with Delta_m(-1)',
           'singular-suite': 'determinant singular vector theorem',
           'coexisting-singulars': 'several singular vectors at one level',
           'distinct-weights': 'several singular vectors at one level',
           'zhu-generator': 'Zhu algebra image of the determinant vector',
           'phi-kills-determinant': 'Weyl realization annihilates (Delta_m)^n',
           'phi-bracket': 'Weyl realization of U(g)',
           'phi-multiplicative': 'Weyl realization of U(g)',
           'phi-homomorphism': 'Weyl realization of U(g)',
           'top-level': 'top level of the quotient module',
           'category-o-classification': 'irreducible highest weight modules for sp_6 at level -1'}
ANCHORS.update(dict.fromkeys(('zero-weight-space', 'printed-span', 'line-families',
                               'isolated-points', 'negative-controls'),
                              ANCHORS['category-o-classification']))


class VerificationReport(object):
    """
    Outcome of one mechanical check.

    :param str claim: short identifier of the checked claim, e.g. ``singular-vector``
    :param str statement: one-line description of what was checked
    :param bool passed: verdict
    :param dict witness: offending generator / residual / polynomial; required when failing
    :param dict parameters: the inputs echoed back
    :param str paper_anchor: the result the claim comes from; defaults to ``ANCHORS[claim]``
    """

    def __init__(self, **kwargs):
        self.claim = None
        self.paper_anchor = None
        self.statement = None
        self.passed = None
        self.witness = None
        self.parameters = {}
        self.details = None
        self.derived = False
        self.seed = None
        self.timing_ms = None
        self.warnings = []
        self.tables = []
        for name, value in kwargs.items():
            setattr(self, name, value)
        if self.paper_anchor is None:
            self.paper_anchor = ANCHORS.get(self.claim)
        if not self.passed and not self.witness:
            raise ValueError('a failing report must carry a witness ({})'.format(self.claim))

    @property
    def verdict(self):
        return 'pass' if self.passed else 'fail'

    def __bool__(self):
        return bool(self.passed)

    def __repr__(self):
        return 'VerificationReport({}: {})'.format(self.claim, self.verdict)

    def to_dict(self, timing=False):
        record = {'claim': self.claim,
                  'paper_anchor': self.paper_anchor,
                  'statement': self.statement,
                  'verdict': self.verdict,
                  'parameters': self.parameters,
                  'seed': self.seed,
                  'versions': {'format': FORMAT_VERSION, 'package': __version__, 'sympy': sympy.__version__}}
        if self.derived:
            record['derived'] = True
        if self.witness:
            record['witness'] = self.witness
        if self.details is not None:
            record['details'] = self.details
        if self.warnings:
            record['warnings'] = list(self.warnings)
        if timing:
            record['timing_ms'] = self.timing_ms
        return record

    @classmethod
    def from_dict(cls, record):
        return cls(claim=record['claim'],
                   paper_anchor=record.get('paper_anchor'),
                   statement=record['statement'],
                   passed=record['verdict'] == 'pass',
                   witness=record.get('witness'),
                   parameters=record.get('parameters', {}),
                   details=record.get('details'),
                   derived=record.get('derived', False),
                   seed=record.get('seed'),
                   timing_ms=record.get('timing_ms'),
                   warnings=record.get('warnings', []))

    def to_payload(self):
        """
        ``to_dict`` with timing and the tables, for the result cache.
        """
        record = self.to_dict(timing=True)
        record['tables'] = [table.to_dict(orient='split') for table in self.tables]
        return record

    @classmethod
    def from_payload(cls, record):
        report = cls.from_dict(record)
        report.tables = [pd.DataFrame(data=t['data'], index=t['index'], columns=t['columns'])
                         for t in record.get('tables', [])]
        return report

    def summary(self):
        parameters = ', '.join('{}={}'.format(k, v) for k, v in self.parameters.items())
        line = '[{}] {} ({})'.format(self.verdict.upper(), self.statement, parameters)
        if self.witness:
            line += '\n    witness: ' + '; '.join('{}: {}'.format(k, v) for k, v in self.witness.items()
                                                  if not isinstance(v, (list, dict)))
        return line


@contextmanager
def stopwatch():
    """
    Yields a dict whose ``ms`` entry is filled in when the block exits.
    """
    elapsed = {'ms': None}
    start = time.perf_counter()
    try:
        yield elapsed
    finally:
        elapsed['ms'] = round((time.perf_counter() - start) * 1000, 3)


def combine(claim, statement, reports, parameters=None):
    """
    One report passing iff every sub-report passes; the first failure supplies the witness.
    """
    failures = [r for r in reports if not r.passed]
    witness = None
    if failures:
        witness = {'failed_claim': failures[0].claim, **(failures[0].witness or {})}
    return VerificationReport(claim=claim,
                              statement=statement,
                              passed=not failures,
                              witness=witness,
                              parameters=parameters or {},
                              details=[r.to_dict() for r in reports],
                              derived=any(r.derived for r in reports))
