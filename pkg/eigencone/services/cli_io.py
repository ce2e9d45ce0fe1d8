"""
Problem files, task dispatch and report rendering for the ``tropeig`` command.

A problem file is a JSON object validated against PROBLEM_SCHEMA. ``run``
executes one task and returns a Report; the command prints it as text or
JSON and maps its decision to the exit status (0 decided, 2 inconclusive).
"""
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Union
import hashlib
import json
import logging
import math

import jsonschema
import numpy as np

from .box import Box
from .config import get_settings, using
from .exceptions import DimensionMismatch, PreconditionViolated, ProblemFileError
from .interval_analysis import (
    attraction_test,
    has_x_simple_eigencone,
    has_x_simple_eigencone_open,
    is_x_simple_image_eigenvector,
    solvable_in_box,
    unique_in_box,
    weak_x_robustness,
)
from .one_sided import analyze, minimal_coverings
from .spectral import (
    eigen_structure,
    eigenvalues,
    has_zero_eigenvalue,
    mcgm,
    simple_image_eigenvector_exists,
    strict_visualization,
)
from .tropical_core import as_matrix, as_vector
from .verdict import INCONCLUSIVE, Verdict, to_jsonable

logger = logging.getLogger(__name__)

TASKS = ('eigenvalues', 'eigencone', 'solve', 'simple-image', 'x-simple', 'robust', 'visualize', 'orbit')
DECIDED = 'decided'

_number = {'type': 'number', 'minimum': 0}
_bound = {'anyOf': [_number, {'const': 'inf'}]}

PROBLEM_SCHEMA = {
    '$schema': 'http://json-schema.org/draft-07/schema#',
    'title': 'tropeig problem',
    'type': 'object',
    'required': ['task', 'matrix'],
    'additionalProperties': False,
    'properties': {
        'task': {'enum': list(TASKS)},
        'matrix': {
            'type': 'array',
            'minItems': 1,
            'items': {'type': 'array', 'items': _number},
        },
        'lambda': {'anyOf': [{'type': 'number', 'exclusiveMinimum': 0}, {'const': 'principal'}]},
        'rhs': {'type': 'array', 'items': _number},
        'vector': {'type': 'array', 'items': _number},
        'interval': {
            'type': 'object',
            'required': ['lower', 'upper'],
            'additionalProperties': False,
            'properties': {
                'lower': {'type': 'array', 'items': _number},
                'upper': {'type': 'array', 'items': _bound},
                'lower_open': {'type': 'array', 'items': {'type': 'boolean'}},
                'upper_open': {'type': 'array', 'items': {'type': 'boolean'}},
            },
        },
    },
}


@dataclass(frozen=True, eq=False)
class ProblemFile:
    task: str
    matrix: np.ndarray
    lam: Union[float, str, None] = None
    rhs: Optional[np.ndarray] = None
    vector: Optional[np.ndarray] = None
    interval: Optional[Box] = None
    raw: Dict[str, Any] = field(default_factory=dict, repr=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ProblemFile':
        """
        Raises:
            ProblemFileError: schema violation
            DimensionMismatch: ragged or non-square matrix, wrong vector lengths
        """
        try:
            jsonschema.validate(data, PROBLEM_SCHEMA)
        except jsonschema.ValidationError as e:
            where = '/'.join(str(p) for p in e.absolute_path) or '(root)'
            raise ProblemFileError(f"Schema violation at {where}: {e.message}") from e

        try:
            matrix = as_matrix(data['matrix'], square=True)
        except ValueError as e:
            raise DimensionMismatch(f"Matrix rows have different lengths: {e}") from e
        n = matrix.shape[0]
        limit = get_settings().max_dimension
        if n > limit:
            raise ProblemFileError(f"Matrix order {n} exceeds the configured maximum {limit}")

        rhs = as_vector(data['rhs']) if 'rhs' in data else None
        vector = as_vector(data['vector']) if 'vector' in data else None
        for name, value in (('rhs', rhs), ('vector', vector)):
            if value is not None and value.shape[0] != n:
                raise DimensionMismatch(f"{name} has length {value.shape[0]}, matrix has order {n}")

        interval = None
        if 'interval' in data:
            bounds = data['interval']
            for key in ('lower', 'upper', 'lower_open', 'upper_open'):
                if key in bounds and len(bounds[key]) != n:
                    raise DimensionMismatch(f"interval.{key} has length {len(bounds[key])}, matrix has order {n}")
            interval = Box.from_dict(bounds)

        return cls(data['task'], matrix, data.get('lambda'), rhs, vector, interval, dict(data))

    @classmethod
    def loads(cls, text: str, task: Optional[str] = None) -> 'ProblemFile':
        """``task`` overrides the task named in the file."""
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ProblemFileError(f"Problem file is not valid JSON: {e}") from e
        if task is not None and isinstance(data, dict):
            data['task'] = task
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str, task: Optional[str] = None) -> 'ProblemFile':
        try:
            with open(path, 'r', encoding='utf-8') as f:
                text = f.read()
        except OSError as e:
            raise ProblemFileError(f"Cannot read problem file {path}: {e}") from e
        return cls.loads(text, task)

    def resolve_lambda(self) -> float:
        """The eigenvalue to work with; "principal" or a missing value means λ(A)."""
        if self.lam is None or self.lam == 'principal':
            return mcgm(self.matrix)
        return float(self.lam)

    def require(self, name: str):
        value = getattr(self, name)
        if value is None:
            raise ProblemFileError(f"Task {self.task!r} needs {name!r} in the problem file")
        return value

    def canonical_json(self) -> str:
        return json.dumps(self.raw, sort_keys=True, separators=(',', ':'))


@dataclass(frozen=True)
class RunOptions:
    tolerance: Optional[float] = None
    seed: Optional[int] = None
    max_coverings: Optional[int] = None
    orbit_steps: Optional[int] = None
    certificate: bool = False

    def overrides(self) -> Dict[str, Any]:
        return {
            'eps_rel': self.tolerance,
            'seed': self.seed,
            'max_coverings': self.max_coverings,
            'orbit_steps': self.orbit_steps,
        }

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class Report:
    task: str
    decision: str
    verdict: Optional[Verdict] = None
    payload: Dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    tolerance: float = 0.0

    @property
    def exit_code(self) -> int:
        return 2 if self.decision == INCONCLUSIVE else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'task': self.task,
            'decision': self.decision,
            'seed': self.seed,
            'tolerance': self.tolerance,
            'payload': to_jsonable(self.payload),
            'verdict': self.verdict.to_dict() if self.verdict is not None else None,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        verdict = data.get('verdict')
        return cls(
            task=data['task'],
            decision=data['decision'],
            verdict=Verdict.from_dict(verdict) if verdict is not None else None,
            payload=data.get('payload', {}),
            seed=data.get('seed', 0),
            tolerance=data.get('tolerance', 0.0),
        )


# --- tasks ---------------------------------------------------------------------------

def _eigenvalues(problem: ProblemFile) -> Report:
    values = eigenvalues(problem.matrix)
    payload = {
        'eigenvalues': list(values),
        'principal': mcgm(problem.matrix),
        'zero_eigenvalue': has_zero_eigenvalue(problem.matrix),
    }
    return Report(problem.task, DECIDED, payload=payload)


def _eigencone(problem: ProblemFile) -> Report:
    lam = problem.resolve_lambda()
    structure = eigen_structure(problem.matrix, lam)
    payload = {
        'lambda': lam,
        'max_support': structure.n_lambda,
        'critical_nodes': structure.critical_nodes,
        'critical_edges': sorted(structure.crit.edge_set()),
        'critical_components': list(structure.crit_components),
        'representatives': list(structure.representatives),
        'generators': structure.generating.T,
    }
    return Report(problem.task, DECIDED, payload=payload)


def _solve(problem: ProblemFile) -> Report:
    A = problem.matrix
    b = problem.require('rhs')
    analysis = analyze(A, b)
    payload = {
        'gamma_star': analysis.gamma_star,
        'm_sets': list(analysis.m_sets),
        'solvable': analysis.solvable,
        'unique': analysis.unique,
        'status': 'unsolvable' if not analysis.solvable else ('unique' if analysis.unique else 'solvable'),
    }
    if analysis.solvable:
        payload['minimal_coverings'] = list(minimal_coverings(analysis.m_sets, analysis.support_b))

    if problem.interval is None:
        return Report(problem.task, DECIDED, payload=payload)

    verdict = solvable_in_box(A, b, problem.interval)
    if verdict.is_yes:
        verdict = unique_in_box(A, b, problem.interval)
    return Report(problem.task, verdict.decision, verdict=verdict, payload=payload)


def _simple_image(problem: ProblemFile) -> Report:
    lam = problem.resolve_lambda()
    if problem.vector is not None and problem.interval is not None:
        verdict = is_x_simple_image_eigenvector(problem.matrix, lam, problem.vector, problem.interval)
    else:
        verdict = simple_image_eigenvector_exists(problem.matrix, lam)
    return Report(problem.task, verdict.decision, verdict=verdict, payload={'lambda': lam})


def _x_simple(problem: ProblemFile) -> Report:
    lam = problem.resolve_lambda()
    X = problem.require('interval')
    if X.is_lower_open:
        verdict = has_x_simple_eigencone_open(problem.matrix, lam, X)
    else:
        verdict = has_x_simple_eigencone(problem.matrix, lam, X)
    return Report(problem.task, verdict.decision, verdict=verdict, payload={'lambda': lam, 'interval': str(X)})


def _robust(problem: ProblemFile) -> Report:
    lam = problem.resolve_lambda()
    X = problem.require('interval')
    conf = get_settings()
    verdict = weak_x_robustness(problem.matrix, lam, X, seed=conf.seed, steps=conf.orbit_steps)
    return Report(problem.task, verdict.decision, verdict=verdict, payload={'lambda': lam, 'interval': str(X)})


def _visualize(problem: ProblemFile) -> Report:
    scaling, matrix = strict_visualization(problem.matrix)
    payload = {'lambda': mcgm(problem.matrix), 'scaling': scaling, 'matrix': matrix}
    return Report(problem.task, DECIDED, payload=payload)


def _orbit(problem: ProblemFile) -> Report:
    lam = problem.resolve_lambda()
    x = problem.require('vector')
    steps = get_settings().orbit_steps
    t = attraction_test(problem.matrix, lam, x, steps)
    payload = {'lambda': lam, 'steps': t, 'horizon': steps}
    return Report(problem.task, DECIDED if t is not None else INCONCLUSIVE, payload=payload)


HANDLERS = {
    'eigenvalues': _eigenvalues,
    'eigencone': _eigencone,
    'solve': _solve,
    'simple-image': _simple_image,
    'x-simple': _x_simple,
    'robust': _robust,
    'visualize': _visualize,
    'orbit': _orbit,
}


def run(problem: ProblemFile, options: Optional[RunOptions] = None) -> Report:
    """Run ``problem.task`` with the given overrides in effect."""
    options = options or RunOptions()
    if problem.task not in HANDLERS:
        raise PreconditionViolated(f"Unknown task {problem.task!r}")

    with using(**options.overrides()) as conf:
        logger.info(f"Running task {problem.task} on a {problem.matrix.shape[0]}x{problem.matrix.shape[0]} matrix")
        report = HANDLERS[problem.task](problem)
        report.seed = conf.seed
        report.tolerance = conf.eps_rel
    logger.info(f"Task {problem.task} finished: {report.decision}")
    return report


def cache_key(problem: ProblemFile, options: RunOptions) -> str:
    material = problem.canonical_json() + json.dumps(options.to_dict(), sort_keys=True)
    return 'tropeig:report:' + hashlib.sha256(material.encode('utf-8')).hexdigest()


def run_cached(problem: ProblemFile, options: Optional[RunOptions] = None, timeout: Optional[int] = None) -> Report:
    """``run`` through Django's cache; reports are stored in JSON form."""
    from django.core.cache import cache

    options = options or RunOptions()
    key = cache_key(problem, options)
    cached = cache.get(key)
    if cached is not None:
        logger.debug(f"Report cache hit for {key}")
        return Report.from_dict(cached)

    report = run(problem, options)
    cache.set(key, report.to_dict(), timeout)
    return report


# --- rendering -----------------------------------------------------------------------

def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return '∞' if math.isinf(value) else f"{value:.6g}"
    if value == 'inf':
        return '∞'
    if isinstance(value, list):
        return '(' + ', '.join(_fmt(v) for v in value) + ')'
    return str(value)


def render_text(report: Report, certificate: bool = False) -> str:
    lines = [
        f"task:      {report.task}",
        f"decision:  {report.decision}",
        f"seed:      {report.seed}",
        f"tolerance: {report.tolerance:g}",
    ]
    payload = to_jsonable(report.payload)
    for key in sorted(payload):
        lines.append(f"{key}: {_fmt(payload[key])}")

    if report.verdict is not None:
        verdict = report.verdict
        if verdict.witness is not None:
            lines.append(f"witness: {_fmt(to_jsonable(verdict.witness))}")
        if verdict.counterexample is not None:
            lines.append(f"second solution: {_fmt(to_jsonable(verdict.counterexample))}")
        if verdict.labels:
            lines.append(f"labels: {', '.join(verdict.labels)}")
        if certificate:
            lines.append("certificate:")
            for entry in verdict.certificate:
                result = '-' if entry.result is None else ('pass' if entry.result else 'fail')
                details = ', '.join(f"{k}={_fmt(v)}" for k, v in sorted(entry.data.items()))
                lines.append(f"  [{result}] {entry.condition} {details}".rstrip())
    return '\n'.join(lines) + '\n'


def report_from_json(text: str) -> Report:
    return Report.from_dict(json.loads(text))
