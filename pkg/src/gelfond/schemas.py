"""Pydantic request/response models shared by the service and the CLI.

Sizes such as x may be given as plain integers or as strings in power
notation ("2^24", "10^6") to avoid decimal transcription errors in sweeps.
Phase parameters are strings: "p/r" for exact rationals, decimal notation
for floats.
"""

from __future__ import annotations

import re

from pydantic import BaseModel, Field, field_validator

from .errors import ValidationError

__all__ = [
    "parse_size", "SumRequest", "SumResponse", "TypeIRequest",
    "TypeIResponse", "TypeIIRequest", "TypeIIResponse", "FourierRequest",
    "FourierResponse", "FourierLemmaRequest", "FourierLemmaResponse",
    "DoubleTruncRequest", "DoubleTruncResponse", "CarryRequest",
    "PerturbRequest", "MismatchRequest", "CountResponse",
    "AutomatonRequest", "AutomatonResponse", "RunlengthRequest",
    "RunlengthResponse", "AdmissibleRequest", "AdmissibleResponse",
    "BoundsRequest", "BoundsResponse",
]

_POWER = re.compile(r"^(\d+)\^(\d+)$")


def parse_size(value) -> int:
    """Integer from an int or a "base^exponent" / decimal string."""
    if isinstance(value, int):
        return value
    text = str(value).strip()
    m = _POWER.match(text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        return int(text)
    except ValueError as exc:
        raise ValidationError(f"bad size {value!r}") from exc


class SumRequest(BaseModel):
    weight: str = Field(pattern="^(mangoldt|moebius|unit)$")
    x: int | str
    q: int = Field(ge=2)
    alpha: str
    P: str
    theta: float = 0.0
    accumulation: str = Field(default="bucketed",
                              pattern="^(bucketed|compensated)$")
    threads: int = Field(default=1, ge=1)

    @field_validator("x")
    @classmethod
    def _x(cls, v):
        return parse_size(v)


class SumResponse(BaseModel):
    re: float
    im: float
    modulus: float
    normalized: float
    term_count: int
    # optional: reported by the service, stripped from CLI output files so
    # identical configurations reproduce byte-identical artifacts
    seconds: float | None = None
    rhs_over_x: float | None = None
    weight: str
    x: int
    theta: float
    alpha: str
    P: str
    q: int


class TypeIRequest(BaseModel):
    M: int = Field(ge=1)
    N: int = Field(ge=1)
    lo: int | str = 1
    hi: int | str
    q: int = Field(ge=2)
    alpha: str
    P: str
    theta: float = 0.0

    @field_validator("lo", "hi")
    @classmethod
    def _sz(cls, v):
        return parse_size(v)


class TypeIResponse(BaseModel):
    value: float
    M: int
    N: int
    interval: list[int]
    m_constraint_ok: bool


class TypeIIRequest(BaseModel):
    M: int = Field(ge=1)
    N: int = Field(ge=1)
    q: int = Field(ge=2)
    alpha: str
    P: str
    theta: float = 0.0
    coeff_seed: int = 0          # seeded random +/-1 coefficients
    a: list[float] | None = None  # explicit coefficients override the seed
    b: list[float] | None = None


class TypeIIResponse(BaseModel):
    re: float
    im: float
    modulus: float
    M: int
    N: int
    balanced: bool


class FourierRequest(BaseModel):
    kappa: int = Field(ge=0)
    lam: int = Field(ge=0)
    k: int = Field(ge=0)
    q: int = Field(ge=2)
    alpha: str
    P: str
    offsets: list[float] = Field(default_factory=lambda: [0.0])


class FourierResponse(BaseModel):
    kappa: int
    lam: int
    k: int
    q: int
    masses: list[dict]           # {"t": float, "mass": float}
    max_abs_entry: float


class FourierLemmaRequest(BaseModel):
    l: int = Field(ge=1)
    kappa: int = Field(ge=0)
    q: int = Field(ge=2)
    alpha: str
    P: str
    grid_bits: int = Field(default=12, ge=0, le=16)
    random_offsets: int = Field(default=64, ge=0)
    seed: int = 0


class FourierLemmaResponse(BaseModel):
    max_ratio: float
    ok: bool
    gamma: float
    bound: float
    argmax_t: float
    grid_size: int


class DoubleTruncRequest(BaseModel):
    mu0: int = Field(ge=0)
    mu1: int = Field(ge=0)
    mu2: int = Field(ge=0)
    lam: int = Field(ge=0)
    k: int = Field(ge=0)
    q: int = Field(ge=2)
    alpha: str
    P: str
    t: float = 0.0


class DoubleTruncResponse(BaseModel):
    mass: float
    rhs_shape: float
    gamma: float
    h_count: int
    t: float
    lam_window_ok: bool
    p_window_ok: bool


class CarryRequest(BaseModel):
    lam: int = Field(ge=1)
    kappa: int = Field(ge=0)
    rho: int = Field(ge=0)
    q: int = Field(ge=2)
    P: str
    enforce_hypotheses: bool = True
    both_impls: bool = False


class PerturbRequest(BaseModel):
    mu: int = Field(ge=1)
    nu: int = Field(ge=1)
    rho: int = Field(ge=0)
    q: int = Field(ge=2)
    enforce_hypotheses: bool = True
    both_impls: bool = False


class MismatchRequest(BaseModel):
    mu: int = Field(ge=1)
    nu: int = Field(ge=1)
    rho: int = Field(ge=0)
    q: int = Field(ge=2)
    alpha: str
    P: str
    sample_budget: int = Field(default=1 << 22, ge=1)
    seed: int = 0
    enforce_hypotheses: bool = True


class CountResponse(BaseModel):
    parameters: dict
    count: int
    bound_shape: float
    ratio: float
    extra: dict = Field(default_factory=dict)
    agreement: bool | None = None   # set when both implementations were run


class AutomatonRequest(BaseModel):
    k_states: int = Field(ge=1)
    P: str
    q: int = Field(default=2, ge=2, le=2)  # binary construction only
    max_m: int | str = 1 << 20

    @field_validator("max_m")
    @classmethod
    def _sz(cls, v):
        return parse_size(v)


class AutomatonResponse(BaseModel):
    i: int
    j: int
    m: int
    block_length: int
    word_even: str
    word_odd: str
    even_windows: int
    odd_windows: int
    ok: bool


class RunlengthRequest(BaseModel):
    mode: str = Field(pattern="^(exact|proposition|word|maxrun|weighted)$")
    N: int = Field(ge=1)
    k: int | None = None
    A: float | None = None
    slack: float = 3.0
    seed: int = 0
    samples: int = 10**5
    weight: str | None = Field(default=None,
                               pattern="^(mangoldt|moebius|unit)$")
    threads: int = Field(default=1, ge=1)


class RunlengthResponse(BaseModel):
    mode: str
    N: int
    result: dict


class AdmissibleRequest(BaseModel):
    q: int = Field(ge=2)
    alpha: str
    P: str
    x_max: int | str
    growth_c: float | None = None

    @field_validator("x_max")
    @classmethod
    def _sz(cls, v):
        return parse_size(v)


class AdmissibleResponse(BaseModel):
    ok: bool
    first_failure: int | None
    threshold: int | None
    failure_count: int
    vacuous: bool
    growth_ok: bool | None
    x_max: int


class BoundsRequest(BaseModel):
    x: int | str
    q: int = Field(ge=2)
    alpha: str
    P: str

    @field_validator("x")
    @classmethod
    def _sz(cls, v):
        return parse_size(v)


class BoundsResponse(BaseModel):
    x: int
    q: int
    alpha: str
    gamma_value: float
    rhs: float
    rhs_over_x: float
    c1: float
    norm: float


#: Response model per CLI subcommand, used to publish JSON schemas.
RESPONSE_MODELS: dict[str, type[BaseModel]] = {
    "sum": SumResponse,
    "typeI": TypeIResponse,
    "typeII": TypeIIResponse,
    "fourier": FourierResponse,
    "fourier_lemma": FourierLemmaResponse,
    "fourier_doubletrunc": DoubleTruncResponse,
    "carry": CountResponse,
    "perturb": CountResponse,
    "mismatch": CountResponse,
    "automaton": AutomatonResponse,
    "runlength": RunlengthResponse,
    "admissible": AdmissibleResponse,
    "bounds": BoundsResponse,
}


def export_schemas(directory) -> list[str]:
    """Write one JSON schema file per subcommand into the directory."""
    import json
    from pathlib import Path
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in RESPONSE_MODELS.items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2,
                                   sort_keys=True) + "\n",
                        encoding="utf-8")
        written.append(str(path))
    return written
