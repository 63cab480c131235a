"""Typed configs and result records for every experiment command.

One record shape serves all commands: schema_version, command tag, the
fully resolved config, a timestamp block, per-run rows, an aggregate
summary, and a single passed verdict recomputable from the rows.  The
timestamp block is the only part excluded from determinism comparisons;
everything else is byte-stable for a fixed flag set.

The JSON schema shipped at schemas/experiment_record.schema.json is the
generated schema of AnyRecord and is what output files validate against.
"""

from __future__ import annotations

from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]

OutputFormat = Literal["json", "csv"]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class TimestampInfo(_Model):
    """Wall-clock context of one run; excluded from determinism checks."""

    created_at: str
    elapsed_s: FiniteFloat


# ---------------------------------------------------------------- configs


class GenConfig(_Model):
    n: int = Field(ge=2)
    d: int = Field(ge=0)
    bipartite: bool = False
    seed: int = Field(default=0, ge=0)
    out: str | None = None


class RigidityScanConfig(_Model):
    kind: Literal["spectral", "cut"] = "spectral"
    n: int | None = Field(default=None, ge=2)
    d: int | None = Field(default=None, ge=1)
    seeds: int = Field(default=5, ge=1)
    swaps: list[int] = Field(default=[0, 1, 10], min_length=1)
    seed: int = Field(default=0, ge=0)
    out: str | None = None
    format: OutputFormat = "json"

    def resolved(self) -> "RigidityScanConfig":
        """Fill kind-dependent defaults; records embed the resolved form."""
        n, d = self.n, self.d
        if n is None:
            n = 60 if self.kind == "spectral" else 16
        if d is None:
            d = 6 if self.kind == "spectral" else 3
        return self.model_copy(update={"n": n, "d": d})


class WitnessConfig(_Model):
    n: int = Field(default=64, ge=2)
    d: int = Field(default=8, ge=1)
    delta: FiniteFloat = Field(default=0.5, gt=0.0, le=1.0)
    epsilon_target: FiniteFloat = Field(default=0.05, ge=0.0)
    trials: int = Field(default=200, ge=1)
    seeds: int = Field(default=5, ge=1)
    min_success_rate: FiniteFloat = Field(default=0.95, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)
    out: str | None = None
    format: OutputFormat = "json"


class FriedmanConfig(_Model):
    n: int = Field(default=300, ge=2, le=2500)
    d: int = Field(default=16, ge=1)
    seeds: int = Field(default=5, ge=1)
    seed: int = Field(default=0, ge=0)
    out: str | None = None
    format: OutputFormat = "json"


class CodecConfig(_Model):
    n: int = Field(default=60, ge=2)
    d: int = Field(default=6, ge=1)
    pairs: int = Field(default=20, ge=1)
    swaps: int = Field(default=5, ge=0)
    seed: int = Field(default=0, ge=0)
    out: str | None = None
    format: OutputFormat = "json"


class CountConfig(_Model):
    points: list[tuple[int, int]] = Field(
        default=[(4, 2), (4, 3), (6, 3), (8, 3)], min_length=1
    )
    out: str | None = None
    format: OutputFormat = "json"


class LowerBoundConfig(_Model):
    kind: Literal["spectral", "cut", "both"] = "spectral"
    n_values: list[int] = Field(default=[10**6], min_length=1)
    epsilon_values: list[FiniteFloat] = Field(default=[0.01], min_length=1)
    out: str | None = None
    format: OutputFormat = "json"


# ------------------------------------------------------------------- rows


class RigidityRow(_Model):
    seed_index: int
    gen_seed: int
    perturb_seed: int
    resamples: int
    swaps_requested: int
    sym_diff: int
    epsilon_used: FiniteFloat
    overlap_observed: int
    overlap_bound: FiniteFloat
    satisfied: bool


class RigidityScanSummary(_Model):
    runs: int
    violations: int
    max_epsilon: FiniteFloat
    min_margin: FiniteFloat


class WitnessRow(_Model):
    seed_index: int
    gen_seed: int
    witness_seed: int
    delta_achieved: FiniteFloat
    sym_diff: int
    gap: int
    lhs_form: int
    success: bool
    trials_used: int
    gram_value: FiniteFloat
    arcsin_value: FiniteFloat


class WitnessSummary(_Model):
    seeds: int
    successes: int
    success_rate: FiniteFloat
    required_rate: FiniteFloat
    min_gap: int
    max_gap: int


class FriedmanRow(_Model):
    seed_index: int
    seed_used: int
    resamples: int
    factor: FiniteFloat
    below_threshold: bool


class FriedmanSummary(_Model):
    threshold: FiniteFloat
    max_factor: FiniteFloat
    all_below: bool


class CodecRow(_Model):
    pair_index: int
    gen_seed: int
    perturb_seed: int
    sym_diff: int
    extra_edges: int
    bits_total: int
    length_law_ok: bool
    roundtrip_ok: bool
    bytes_deterministic: bool


class CodecSummary(_Model):
    pairs: int
    all_ok: bool


class CountRow(_Model):
    n: int
    d: int
    log2_formula: FiniteFloat
    exact: int
    lg_exact: FiniteFloat
    abs_error_bits: FiniteFloat
    tolerance_bits: FiniteFloat
    within_tolerance: bool
    in_regime: bool


class CountSummary(_Model):
    points: int
    within: int
    all_within: bool


class LowerBoundRow(_Model):
    kind: Literal["spectral", "cut"]
    n: int
    epsilon: FiniteFloat
    d: int
    bits_lower_bound: FiniteFloat
    count_log2: FiniteFloat
    capacity_log2: FiniteFloat
    gap_log2: FiniteFloat
    gap_positive: bool
    in_regime: bool
    note: str = "leading-term only"


class LowerBoundSummary(_Model):
    rows: int
    gaps_positive: int
    all_gaps_positive: bool


# ---------------------------------------------------------------- records


class _RecordBase(_Model):
    schema_version: Literal[1] = SCHEMA_VERSION
    timestamp: TimestampInfo
    passed: bool


class RigidityScanRecord(_RecordBase):
    command: Literal["rigidity-scan"] = "rigidity-scan"
    config: RigidityScanConfig
    rows: list[RigidityRow]
    summary: RigidityScanSummary


class WitnessRecord(_RecordBase):
    command: Literal["witness"] = "witness"
    config: WitnessConfig
    rows: list[WitnessRow]
    summary: WitnessSummary


class FriedmanRecord(_RecordBase):
    command: Literal["friedman"] = "friedman"
    config: FriedmanConfig
    rows: list[FriedmanRow]
    summary: FriedmanSummary


class CodecRecord(_RecordBase):
    command: Literal["codec"] = "codec"
    config: CodecConfig
    rows: list[CodecRow]
    summary: CodecSummary


class CountRecord(_RecordBase):
    command: Literal["count"] = "count"
    config: CountConfig
    rows: list[CountRow]
    summary: CountSummary


class LowerBoundRecord(_RecordBase):
    command: Literal["lowerbound"] = "lowerbound"
    config: LowerBoundConfig
    rows: list[LowerBoundRow]
    summary: LowerBoundSummary


AnyRecord = Annotated[
    Union[
        RigidityScanRecord,
        WitnessRecord,
        FriedmanRecord,
        CodecRecord,
        CountRecord,
        LowerBoundRecord,
    ],
    Field(discriminator="command"),
]


class GenResponse(_Model):
    """Result of graph generation: the text-format graph plus its identity."""

    config: GenConfig
    graph_text: str
    sha256: str


def record_json(record) -> str:
    """Canonical JSON for files and determinism checks (2-space indent)."""
    return record.model_dump_json(indent=2) + "\n"


def record_csv(record) -> str:
    """Flat projection of the rows only; config and summary live in JSON."""
    import csv
    import io

    buf = io.StringIO()
    rows = [row.model_dump() for row in record.rows]
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
