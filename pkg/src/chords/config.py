"""Strict JSON configuration schemas; unknown keys are rejected."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ChordsError, ConfigError
from .params import ProblemParams


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ParamsModel(_Strict):
    n: int = 2
    p: float
    q: float
    alpha: float = 0.0
    beta: float = 0.0
    gamma: Optional[float] = None
    epsilon: Optional[float] = None


class GridModel(_Strict):
    rings: int = Field(128, ge=2)          # directions on the circle = 2 * rings
    nodes: int = Field(8, ge=1)            # Gauss nodes per facet edge for F_q
    f_nodes: int = Field(12, ge=2)         # nodes per angular panel for f_eps


class MCModel(_Strict):
    n_samples: int = Field(1_000_000, gt=0)
    bounding_radius: Optional[float] = Field(None, gt=0)


class VariationalModel(_Strict):
    tol: float = Field(1e-3, gt=0)
    max_iter: int = Field(2000, gt=0)


class OutputsModel(_Strict):
    dir: Optional[str] = None
    report: Optional[str] = None
    sweep_csv: Optional[str] = None


class ExperimentConfig(_Strict):
    params: ParamsModel
    eps_list: List[float] = [0.4, 0.2, 0.1, 0.05]
    grid: GridModel = GridModel()
    mc: MCModel = MCModel()
    variational: VariationalModel = VariationalModel()
    seed: int = Field(0, ge=0, lt=2 ** 64)
    outputs: OutputsModel = OutputsModel()

    @field_validator("eps_list")
    @classmethod
    def _eps(cls, v):
        if not v:
            raise ValueError("eps_list must be nonempty")
        if any(not 0 < e < 0.5 for e in v):
            raise ValueError("every epsilon must lie in (0, 1/2)")
        if any(a <= b for a, b in zip(v, v[1:])):
            raise ValueError("eps_list must be strictly descending")
        return v

    def problem_params(self):
        try:
            return ProblemParams(**self.params.model_dump())
        except ChordsError as exc:
            raise ConfigError(str(exc)) from None


class ClassicalConfig(_Strict):
    n: int = 2
    alpha: float = Field(0.0, ge=0)
    beta: float = Field(0.0, ge=0)
    gamma: float = Field(..., gt=-1, lt=0)
    epsilon: float = Field(..., gt=0, lt=0.5)
    rings: int = Field(64, ge=2)


def load_config(text, model=ExperimentConfig):
    """Parse and validate; problem parameters are revalidated through ProblemParams."""
    try:
        cfg = model.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from None
    if isinstance(cfg, ExperimentConfig):
        cfg.problem_params()
    return cfg
