"""
Structured decision output shared by the deciders.

A verdict carries the decision, an optional witness vector (and, for
refuted simplicity, a second solution), and a certificate trail of
(condition, result, data) entries. Certificate data is stored in JSON form
as it is added, so ``Verdict.from_dict(v.to_dict()).to_dict() == v.to_dict()``.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional
import math

import numpy as np

YES = 'yes'
NO = 'no'
INCONCLUSIVE = 'inconclusive'
DECISIONS = (YES, NO, INCONCLUSIVE)


def to_jsonable(value: Any) -> Any:
    """numpy arrays, sets and special floats to plain JSON values ("inf" for +inf)."""
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (frozenset, set)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return 'nan'
        if math.isinf(v):
            return 'inf' if v > 0 else '-inf'
        return v
    if value is None or isinstance(value, str):
        return value
    return str(value)


def vector_from_jsonable(values) -> Optional[np.ndarray]:
    if values is None:
        return None
    return np.array([math.inf if v == 'inf' else float(v) for v in values], dtype=float)


@dataclass
class CertificateEntry:
    condition: str
    result: Optional[bool]
    data: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {'condition': self.condition, 'result': self.result, 'data': self.data}


@dataclass
class Verdict:
    decision: str
    witness: Optional[np.ndarray] = None
    counterexample: Optional[np.ndarray] = None
    certificate: List[CertificateEntry] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.decision not in DECISIONS:
            raise ValueError(f"Unknown decision {self.decision!r}")

    @property
    def is_yes(self) -> bool:
        return self.decision == YES

    @property
    def is_no(self) -> bool:
        return self.decision == NO

    @property
    def is_inconclusive(self) -> bool:
        return self.decision == INCONCLUSIVE

    def add(self, condition: str, result: Optional[bool], **data) -> 'Verdict':
        """Append a certificate entry."""
        self.certificate.append(
            CertificateEntry(condition, None if result is None else bool(result), to_jsonable(data))
        )
        return self

    def label(self, name: str) -> 'Verdict':
        if name not in self.labels:
            self.labels.append(name)
        return self

    def entries(self, condition: str) -> List[CertificateEntry]:
        return [entry for entry in self.certificate if entry.condition == condition]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'decision': self.decision,
            'witness': to_jsonable(self.witness),
            'counterexample': to_jsonable(self.counterexample),
            'labels': list(self.labels),
            'certificate': [entry.to_dict() for entry in self.certificate],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Verdict':
        return cls(
            decision=data['decision'],
            witness=vector_from_jsonable(data.get('witness')),
            counterexample=vector_from_jsonable(data.get('counterexample')),
            certificate=[
                CertificateEntry(entry['condition'], entry.get('result'), entry.get('data', {}))
                for entry in data.get('certificate', [])
            ],
            labels=list(data.get('labels', [])),
        )
