"""
Verification drivers over the identity catalog.

``verify`` builds both sides of one record in a given environment and compares
them coefficient by coefficient; ``cross_check`` and ``bisection_coherence``
replay the derivation arrows between records; ``audit_independence`` inspects
builder traces to make sure the two sides of a record never share a top-level
computation.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import jsonschema

from src.components.catalog import (
    BISECTION_CHECKS,
    CATALOG,
    CROSS_CHECKS,
    BisectionCheck,
    BuildContext,
    Builder,
    CrossCheck,
    IdentityRecord,
    find_record,
)
from src.components.errors import (
    ConfigurationError,
    ParityError,
    QSeriesError,
    UnknownIdentityError,
)
from src.components.exactalg import ParamPoly, format_exponent
from src.components.qseries import (
    Environment,
    Monomial,
    QSeries,
    cache_stats,
    product_quotient,
    specialize_env,
)
from src.components.settings import Settings
from src.components.tracing import TraceEntry, trace_calls

logger = logging.getLogger(__name__)


class Status(str, Enum):
    PASS = 'PASS'
    FAIL = 'FAIL'
    ERROR = 'ERROR'


@dataclass(frozen=True)
class Mismatch:
    """First disagreement between two series."""

    exponent: int
    denominator: int
    lhs: ParamPoly
    rhs: ParamPoly
    against: str = 'rhs'

    def to_dict(self) -> dict:
        return {
            'exponent': format_exponent(self.exponent, self.denominator),
            'against': self.against,
            'lhs': self.lhs.to_json_terms(),
            'rhs': self.rhs.to_json_terms(),
        }

    def __str__(self) -> str:
        return (
            f"q^{format_exponent(self.exponent, self.denominator)}: "
            f"lhs={self.lhs} {self.against}={self.rhs}"
        )


@dataclass
class VerificationReport:
    """
    Outcome of one verification.

    PASS means every coefficient with exponent <= order agreed exactly. The
    computed left side is kept in ``series`` for callers that want the
    coefficients; it is not part of the serialized report.
    """

    id: str
    order: int
    denominator: int
    environment: str
    status: Status
    m: Optional[int] = None
    mismatch: Optional[Mismatch] = None
    message: Optional[str] = None
    elapsed_ms: float = 0.0
    series: Optional[QSeries] = field(default=None, repr=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> dict:
        doc = {
            'id': self.id,
            'order': self.order,
            'denominator': self.denominator,
            'environment': self.environment,
            'status': self.status.value,
            'm': self.m,
            'elapsed_ms': round(self.elapsed_ms, 3),
        }
        if self.mismatch is not None:
            doc['mismatch'] = self.mismatch.to_dict()
        if self.message is not None:
            doc['message'] = self.message
        return doc

    def summary_line(self) -> str:
        knob = '' if self.m is None else f" m={self.m}"
        line = f"{self.status.value:5} {self.id}{knob} [{self.environment}] order={self.order}"
        if self.mismatch is not None:
            line += f" first mismatch at {self.mismatch}"
        elif self.message:
            line += f" ({self.message})"
        return line


_TERM_SCHEMA = {
    'type': 'array',
    'items': {
        'type': 'array',
        'items': {'type': 'integer'},
        'minItems': 4,
        'maxItems': 4,
    },
}

REPORT_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'title': 'VerificationReport',
    'type': 'object',
    'required': ['id', 'order', 'denominator', 'environment', 'status', 'm', 'elapsed_ms'],
    'additionalProperties': False,
    'properties': {
        'id': {'type': 'string', 'minLength': 1},
        'order': {'type': 'integer', 'minimum': 0},
        'denominator': {'type': 'integer', 'minimum': 1},
        'environment': {'type': 'string'},
        'status': {'enum': [s.value for s in Status]},
        'm': {'type': ['integer', 'null']},
        'elapsed_ms': {'type': 'number', 'minimum': 0},
        'message': {'type': 'string'},
        'mismatch': {
            'type': 'object',
            'required': ['exponent', 'against', 'lhs', 'rhs'],
            'additionalProperties': False,
            'properties': {
                'exponent': {'type': 'string'},
                'against': {'type': 'string'},
                'lhs': _TERM_SCHEMA,
                'rhs': _TERM_SCHEMA,
            },
        },
    },
}

RUN_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'title': 'VerificationRun',
    'type': 'object',
    'required': ['reports', 'counts'],
    'properties': {
        'reports': {'type': 'array', 'items': REPORT_SCHEMA},
        'counts': {
            'type': 'object',
            'properties': {s.value: {'type': 'integer', 'minimum': 0} for s in Status},
            'required': [s.value for s in Status],
        },
    },
}


def validate_report(doc: dict) -> None:
    """Raise jsonschema.ValidationError if ``doc`` is not a valid report."""
    jsonschema.validate(instance=doc, schema=REPORT_SCHEMA)


def run_document(reports: Sequence[VerificationReport]) -> dict:
    """One JSON document for a batch of reports."""
    counts = {s.value: 0 for s in Status}
    for report in reports:
        counts[report.status.value] += 1
    doc = {'reports': [r.to_dict() for r in reports], 'counts': counts}
    jsonschema.validate(instance=doc, schema=RUN_SCHEMA)
    return doc


# -- catalog access ------------------------------------------------------------


def list_identities() -> List[dict]:
    """Catalog summaries in catalog order."""
    return [record.summary() for record in CATALOG]


def get_record(identity_id: str) -> IdentityRecord:
    """
    Look up a catalog record.

    Raises:
        UnknownIdentityError: If no record has this id
    """
    record = find_record(identity_id)
    if record is None:
        raise UnknownIdentityError(f"Unknown identity {identity_id!r}")
    return record


EnvInput = Union[None, Environment, Mapping[str, Optional[Monomial]]]


def _environment(record: IdentityRecord, env: EnvInput, denominator: int) -> Environment:
    if isinstance(env, Environment):
        bindings = dict(env.bindings)
    else:
        bindings = dict(env or {})
    extra = sorted(set(bindings) - set(record.params))
    if extra:
        raise ConfigurationError(
            f"{record.id} has parameters {list(record.params) or 'none'}; cannot set {extra}"
        )
    return specialize_env(bindings, denominator)


def _record_order(record: IdentityRecord, order: Optional[int], settings: Settings) -> int:
    if order is not None:
        return order
    return settings.default_order if record.default_order is None else record.default_order


def _knob(record: IdentityRecord, m: Optional[int]) -> Optional[int]:
    if record.knob is None:
        if m is not None:
            raise ConfigurationError(f"{record.id} takes no knob, got m={m}")
        return None
    if m is None:
        return record.knob.start
    if m not in record.knob:
        raise ConfigurationError(
            f"m={m} is outside {record.id}'s range {record.knob.start}..{record.knob.stop - 1}"
        )
    return m


def _context(
    record: IdentityRecord,
    env: EnvInput,
    order: int,
    m: Optional[int],
    settings: Settings,
    window_padding: int = 0,
    shell_margin: Optional[int] = None,
) -> BuildContext:
    if order < 0:
        raise ConfigurationError(f"order must be nonnegative, got {order}")
    d = settings.denominator
    ctx = BuildContext(
        env=_environment(record, env, d),
        ncut=order * d,
        denominator=d,
        m=_knob(record, m),
        shell_margin=settings.shell_margin if shell_margin is None else shell_margin,
        window_padding=window_padding,
    )
    if record.exclusion is not None:
        reason = record.exclusion(ctx)
        if reason:
            logger.warning(f"{record.id} rejects environment {ctx.env}: {reason}")
            raise ConfigurationError(f"{record.id} is excluded at {ctx.env}: {reason}")
    return ctx


def _complete(series: QSeries, ncut: int, label: str) -> QSeries:
    if series.ncut is not None and series.ncut < ncut:
        raise QSeriesError(f"{label} is only complete to {series.ncut}, needed {ncut}")
    return series.truncate(ncut)


def _compare(
    pairs: Iterable[Tuple[str, QSeries, QSeries]], ncut: int, denominator: int
) -> Optional[Mismatch]:
    for against, reference, other in pairs:
        found = _complete(reference, ncut, 'reference').first_mismatch(
            _complete(other, ncut, against)
        )
        if found is not None:
            exp, mine, theirs = found
            return Mismatch(exp, denominator, mine, theirs, against)
    return None


def _run(
    report_id: str,
    order: int,
    ctx: BuildContext,
    m: Optional[int],
    compute,
) -> VerificationReport:
    """Evaluate ``compute`` and turn its outcome or its failure into a report."""
    start = time.perf_counter()
    mismatch, message, status, series = None, None, Status.PASS, None
    try:
        series, mismatch = compute()
        if mismatch is not None:
            status = Status.FAIL
    except ParityError as e:
        status, message = Status.FAIL, f"parity: {e}"
    except (QSeriesError, ZeroDivisionError) as e:
        logger.error(f"{report_id} [{ctx.env}] failed: {type(e).__name__}: {e}")
        status, message = Status.ERROR, f"{type(e).__name__}: {e}"
    elapsed = (time.perf_counter() - start) * 1000.0

    report = VerificationReport(
        id=report_id,
        order=order,
        denominator=ctx.denominator,
        environment=ctx.env.describe(),
        status=status,
        m=m,
        mismatch=mismatch,
        message=message,
        elapsed_ms=elapsed,
        series=series,
    )
    logger.info(f"{report.status.value} {report_id} order={order} ({elapsed:.0f} ms)")
    return report


# -- verification ----------------------------------------------------------------


def verify(
    identity_id: str,
    order: Optional[int] = None,
    env: EnvInput = None,
    m: Optional[int] = None,
    settings: Optional[Settings] = None,
    window_padding: int = 0,
    shell_margin: Optional[int] = None,
) -> VerificationReport:
    """
    Build both sides of one identity independently and compare them.

    Args:
        identity_id: Catalog id
        order: Truncation order in whole powers of q (record default, then
            settings.default_order, if None)
        env: Parameter bindings; unbound parameters stay symbolic
        m: Knob value for families (defaults to the start of the range)
        settings: Engine settings (read from the environment if None)
        window_padding: Extra z-window indices for constant-term records
        shell_margin: Override of the lattice shell margin

    Returns:
        The report; builder failures become ERROR (parity failures FAIL)

    Raises:
        UnknownIdentityError: If the id is not in the catalog
        ConfigurationError: If env, m or order violate the record's constraints
    """
    settings = settings or Settings()
    record = get_record(identity_id)
    order = _record_order(record, order, settings)
    ctx = _context(record, env, order, m, settings, window_padding, shell_margin)

    def compute():
        lhs = record.lhs(ctx)
        rhs = record.rhs(ctx)
        pairs = [('rhs', lhs, rhs)]
        pairs += [
            (f"alternate-{i}", lhs, alternate(ctx))
            for i, alternate in enumerate(record.alternates, 1)
        ]
        return lhs.truncate(ctx.ncut), _compare(pairs, ctx.ncut, ctx.denominator)

    return _run(record.id, order, ctx, ctx.m, compute)


def _verify_job(job: Tuple[str, Optional[int], Optional[int], dict]) -> VerificationReport:
    identity_id, order, m, settings = job
    report = verify(identity_id, order, None, m, Settings(**settings))
    report.series = None
    return report


def catalog_jobs(order: Optional[int] = None) -> List[Tuple[str, Optional[int], Optional[int]]]:
    """(id, order, m) for every record and every knob value, in catalog order."""
    jobs = []
    for record in CATALOG:
        knobs = [None] if record.knob is None else list(record.knob)
        jobs.extend((record.id, order, m) for m in knobs)
    return jobs


def verify_all(
    order: Optional[int] = None,
    settings: Optional[Settings] = None,
    workers: Optional[int] = None,
) -> List[VerificationReport]:
    """
    Verify every record (every knob value of families) at ``order``.

    Reports come back in catalog order whatever the number of workers.

    Args:
        order: Truncation order overriding each record's default
        settings: Engine settings
        workers: Worker processes (settings.workers if None; 1 runs in-process)

    Returns:
        One report per (record, knob value)
    """
    settings = settings or Settings()
    workers = settings.workers if workers is None else workers
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")
    jobs = [(i, o, m, settings.as_dict()) for i, o, m in catalog_jobs(order)]
    logger.info(f"Verifying {len(jobs)} catalog entries with {workers} worker(s)")

    if workers <= 1:
        reports = [_verify_job(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_job, jobs))

    logger.debug(f"cache statistics: {cache_stats()}")
    return reports


def cross_check(
    checks: Sequence[CrossCheck] = CROSS_CHECKS,
    order: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> List[VerificationReport]:
    """
    Specialize each source record and compare it with its target side by side.

    The source's left side is compared with the target's left side and the
    source's right side with the target's right side, after multiplying the
    source sides by the check's bridge quotient.
    """
    settings = settings or Settings()
    reports = []
    for check in checks:
        source = get_record(check.source)
        target = get_record(check.target)
        level = min(_record_order(source, order, settings), _record_order(target, order, settings))
        src_ctx = _context(source, dict(check.source_env), level, check.source_m, settings)
        tgt_ctx = _context(target, dict(check.target_env), level, check.target_m, settings)

        def compute(source=source, target=target, src_ctx=src_ctx, tgt_ctx=tgt_ctx, check=check):
            ncut, d = src_ctx.ncut, src_ctx.denominator
            lhs, rhs = source.lhs(src_ctx), source.rhs(src_ctx)
            nums, dens = check.bridge
            if nums or dens:
                bridge = product_quotient(nums, dens, ncut, d)
                lhs, rhs = (lhs * bridge).truncate(ncut), (rhs * bridge).truncate(ncut)
            pairs = [
                ('target-lhs', lhs, target.lhs(tgt_ctx)),
                ('target-rhs', rhs, target.rhs(tgt_ctx)),
            ]
            return lhs.truncate(ncut), _compare(pairs, ncut, d)

        reports.append(_run(check.label, level, src_ctx, src_ctx.m, compute))
    return reports


def _split(
    builder: Builder, ctx_plus: BuildContext, ctx_minus: BuildContext
) -> Tuple[QSeries, QSeries]:
    plus, minus = builder(ctx_plus), builder(ctx_minus)
    return (plus + minus).div_exact(2), (plus - minus).div_exact(2)


def bisection_coherence(
    checks: Sequence[BisectionCheck] = BISECTION_CHECKS,
    order: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> List[VerificationReport]:
    """
    Even/odd parts of a one-parameter record against two bisection targets.

    For each side of the source, (S(v) + S(-v))/2 must equal the even target's
    matching side and (S(v) - S(-v))/2 must equal ``odd_factor`` times the odd
    target's matching side.
    """
    settings = settings or Settings()
    reports = []
    for check in checks:
        source = get_record(check.source)
        even = get_record(check.even_target)
        odd = get_record(check.odd_target)
        level = min(_record_order(source, order, settings), _record_order(even, order, settings))
        plus = _context(source, {'x': check.value}, level, check.m, settings)
        minus = _context(source, {'x': -check.value}, level, check.m, settings)
        even_ctx = _context(even, None, level, check.m if even.knob else None, settings)
        odd_ctx = _context(odd, None, level, check.m if odd.knob else None, settings)

        def compute(source=source, even=even, odd=odd, plus=plus, minus=minus,
                    even_ctx=even_ctx, odd_ctx=odd_ctx, check=check):
            ncut, d = plus.ncut, plus.denominator
            pairs = []
            for side in ('lhs', 'rhs'):
                even_part, odd_part = _split(getattr(source, side), plus, minus)
                pairs.append((f"even-{side}", even_part, getattr(even, side)(even_ctx)))
                odd_target = getattr(odd, side)(odd_ctx).mul_monomial(check.odd_factor)
                pairs.append((f"odd-{side}", odd_part, odd_target))
            return None, _compare(pairs, ncut, d)

        reports.append(_run(check.label, level, plus, check.m, compute))
    return reports


# -- independence audit ------------------------------------------------------------


def _trace(builder: Builder, ctx: BuildContext) -> List[TraceEntry]:
    with trace_calls() as calls:
        builder(ctx)
    return calls


def audit_independence(
    identity_id: str,
    order: int = 4,
    m: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Dict[str, List[TraceEntry]]:
    """
    Top-level primitive calls shared between the right side and the other builders.

    Args:
        identity_id: Catalog id
        order: Small truncation order used for the traced run
        m: Knob value
        settings: Engine settings

    Returns:
        Mapping builder label -> calls it shares with the right side (empty lists
        when the record is independent)
    """
    settings = settings or Settings()
    record = get_record(identity_id)
    ctx = _context(record, None, order, m, settings)
    rhs_calls = set(_trace(record.rhs, ctx))
    shared = {'lhs': [c for c in _trace(record.lhs, ctx) if c in rhs_calls]}
    for i, alternate in enumerate(record.alternates, 1):
        shared[f"alternate-{i}"] = [c for c in _trace(alternate, ctx) if c in rhs_calls]
    return shared
