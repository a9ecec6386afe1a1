"""Run configuration: one JSON document, one section per model.

Every section is validated by its owning type before any computation
runs; messages name the offending key. The resolved configuration (all
defaults materialized) is echoed into the summary report so a run can be
reproduced from its own output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import balance, capacity, coverage, density, economics, ingest, nr
from .errors import ConfigError, GnbdimError
from .identifiers import PlmnId, parse_plmn


@dataclass(frozen=True)
class RunConfig:
    nr_config: nr.NrConfig
    guard_fraction: float
    link: coverage.LinkBudget
    sensitivity_prbs: int
    propagation: coverage.PropagationModel
    traffic: capacity.TrafficModel
    subs_per_weight: float
    thresholds: balance.BalanceThresholds
    cost: economics.CostModel
    duty_fraction: float
    cost_multiplier: float
    grid: density.GridSpec
    w_cols: int
    h_rows: int
    radio: ingest.Radio | None
    plmn: PlmnId | None
    bbox: ingest.Bbox | None
    input_path: str | None
    out_dir: str | None

    def to_dict(self) -> dict:
        """Fully resolved echo; loading this dict reproduces the run."""
        return {
            "nr": {
                "fr": self.nr_config.fr.band,
                "carrier_ghz": self.nr_config.fr.carrier_ghz,
                "channel_bw_mhz": self.nr_config.channel_bw_mhz,
                "guard_fraction": self.guard_fraction,
                "bwps": [
                    {
                        "mu": b.mu,
                        "bw_mhz": b.bw_mhz,
                        "n_prb": b.n_prb,
                        "purpose": b.purpose,
                    }
                    for b in self.nr_config.bwps
                ],
            },
            "link_budget": {
                "tx_power_dbm": self.link.tx_power_dbm,
                "tx_antenna_gain_dbi": self.link.tx_antenna_gain_dbi,
                "tx_losses_db": self.link.tx_losses_db,
                "rx_antenna_gain_dbi": self.link.rx_antenna_gain_dbi,
                "rx_losses_db": self.link.rx_losses_db,
                "noise_figure_db": self.link.noise_figure_db,
                "required_sinr_db": self.link.required_sinr_db,
                "shadow_margin_db": self.link.shadow_margin_db,
                "penetration_margin_db": self.link.penetration_margin_db,
                "sensitivity_prbs": self.sensitivity_prbs,
            },
            "propagation": {
                "kind": self.propagation.kind,
                "alpha": self.propagation.alpha,
                "beta_db": self.propagation.beta_db,
                "gamma": self.propagation.gamma,
            },
            "traffic": {
                "demand_per_sub_mbps": self.traffic.demand_per_sub_mbps,
                "target_load": self.traffic.target_load,
                "se_bps_per_hz": self.traffic.se_bps_per_hz,
                "overhead_fraction": self.traffic.overhead_fraction,
                "subs_per_weight": self.subs_per_weight,
            },
            "balance": {
                "eps_radius": self.thresholds.eps_radius,
                "eps_load": self.thresholds.eps_load,
                "max_iter": self.thresholds.max_iter,
                "damping": self.thresholds.damping,
                "eta": self.thresholds.eta,
            },
            "cost": {
                # Multiplier already baked into the per-site figures, so the
                # echo reloads to the same effective cost with multiplier 1.
                "capex_per_site": self.cost.capex_per_site,
                "capex_amortization_years": self.cost.capex_amortization_years,
                "opex_per_site_per_year": self.cost.opex_per_site_per_year,
                "duty_fraction": self.duty_fraction,
                "cost_multiplier": 1.0,
            },
            "grid": {
                "origin_lon": self.grid.origin_lon,
                "origin_lat": self.grid.origin_lat,
                "n_cols": self.grid.n_cols,
                "n_rows": self.grid.n_rows,
                "tile_km": self.grid.tile_km,
            },
            "window": {"w_cols": self.w_cols, "h_rows": self.h_rows},
            "filters": {
                "radio": None if self.radio is None else self.radio.value,
                "plmn": None if self.plmn is None else str(self.plmn),
                "bbox": None if self.bbox is None else list(self.bbox),
            },
            "input": self.input_path,
            "out": self.out_dir,
        }


def _section(doc: dict, name: str, required: bool = True) -> dict:
    sec = doc.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing config section {name!r}")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    return sec


def _get(sec: dict, section: str, key: str, default=None, required: bool = False):
    if key in sec:
        return sec[key]
    if required:
        raise ConfigError(f"missing config key {section}.{key}")
    return default


def _build_nr(sec: dict) -> tuple[nr.NrConfig, float]:
    band = _get(sec, "nr", "fr", required=True)
    carrier = _get(sec, "nr", "carrier_ghz", required=True)
    guard = _get(sec, "nr", "guard_fraction", nr.DEFAULT_GUARD_FRACTION)
    allowed_raw = _get(sec, "nr", "allowed_bandwidths")
    allowed = (
        {k: tuple(v) for k, v in allowed_raw.items()} if allowed_raw else None
    )
    overrides = {
        (o["bw_mhz"], o["mu"]): o["n_prb"]
        for o in _get(sec, "nr", "prb_overrides", [])
    }
    bwps = []
    for i, b in enumerate(_get(sec, "nr", "bwps", required=True)):
        mu = _get(b, f"nr.bwps[{i}]", "mu", required=True)
        bw = _get(b, f"nr.bwps[{i}]", "bw_mhz", required=True)
        # Explicit n_prb on the part wins over the override table, which
        # wins over the guard-fraction derivation.
        n_prb = _get(b, f"nr.bwps[{i}]", "n_prb", overrides.get((bw, mu)))
        bwps.append(
            nr.bandwidth_part(
                mu=mu,
                bw_mhz=bw,
                purpose=_get(b, f"nr.bwps[{i}]", "purpose", ""),
                guard_fraction=guard,
                n_prb=n_prb,
            )
        )
    cfg = nr.NrConfig(
        fr=nr.FrequencyRange(band=band, carrier_ghz=carrier),
        bwps=tuple(bwps),
        channel_bw_mhz=float(_get(sec, "nr", "channel_bw_mhz", 0.0)),
        allowed=allowed,
    )
    return cfg, guard


def load_config_dict(doc: dict) -> RunConfig:
    """Validate and materialize a configuration document."""
    try:
        nr_cfg, guard = _build_nr(_section(doc, "nr"))

        lb = _section(doc, "link_budget")
        link = coverage.LinkBudget(
            tx_power_dbm=_get(lb, "link_budget", "tx_power_dbm", required=True),
            tx_antenna_gain_dbi=_get(lb, "link_budget", "tx_antenna_gain_dbi", 0.0),
            tx_losses_db=_get(lb, "link_budget", "tx_losses_db", 0.0),
            rx_antenna_gain_dbi=_get(lb, "link_budget", "rx_antenna_gain_dbi", 0.0),
            rx_losses_db=_get(lb, "link_budget", "rx_losses_db", 0.0),
            noise_figure_db=_get(lb, "link_budget", "noise_figure_db", required=True),
            required_sinr_db=_get(lb, "link_budget", "required_sinr_db", required=True),
            shadow_margin_db=_get(lb, "link_budget", "shadow_margin_db", 0.0),
            penetration_margin_db=_get(lb, "link_budget", "penetration_margin_db", 0.0),
        )
        sensitivity_prbs = int(_get(lb, "link_budget", "sensitivity_prbs", 1))
        if sensitivity_prbs < 1:
            raise ConfigError("link_budget.sensitivity_prbs must be >= 1")

        pm = _section(doc, "propagation")
        propagation = coverage.PropagationModel(
            kind=_get(pm, "propagation", "kind", required=True),
            alpha=_get(pm, "propagation", "alpha", 0.0),
            beta_db=_get(pm, "propagation", "beta_db", 0.0),
            gamma=_get(pm, "propagation", "gamma", 0.0),
        )

        tr = _section(doc, "traffic")
        traffic = capacity.TrafficModel(
            demand_per_sub_mbps=_get(tr, "traffic", "demand_per_sub_mbps", required=True),
            target_load=_get(tr, "traffic", "target_load", 1.0),
            se_bps_per_hz=_get(tr, "traffic", "se_bps_per_hz", required=True),
            overhead_fraction=_get(
                tr, "traffic", "overhead_fraction", capacity.DEFAULT_OVERHEAD_FRACTION
            ),
        )
        subs_per_weight = float(_get(tr, "traffic", "subs_per_weight", 1.0))

        ba = _section(doc, "balance", required=False)
        thresholds = balance.BalanceThresholds(
            eps_radius=_get(ba, "balance", "eps_radius", 0.10),
            eps_load=_get(ba, "balance", "eps_load", 0.05),
            max_iter=int(_get(ba, "balance", "max_iter", 100)),
            damping=_get(ba, "balance", "damping", 0.5),
            eta=_get(ba, "balance", "eta", balance.DEFAULT_ETA),
        )

        co = _section(doc, "cost")
        multiplier = float(_get(co, "cost", "cost_multiplier", 1.0))
        if multiplier <= 0:
            raise ConfigError("cost.cost_multiplier must be > 0")
        cost = economics.CostModel(
            capex_per_site=_get(co, "cost", "capex_per_site", required=True) * multiplier,
            capex_amortization_years=_get(
                co, "cost", "capex_amortization_years", required=True
            ),
            opex_per_site_per_year=_get(
                co, "cost", "opex_per_site_per_year", required=True
            ) * multiplier,
        )
        duty = float(_get(co, "cost", "duty_fraction", economics.DEFAULT_DUTY_FRACTION))
        if not 0 < duty <= 1:
            raise ConfigError("cost.duty_fraction must be in (0, 1]")

        gr = _section(doc, "grid")
        grid = density.GridSpec(
            origin_lon=_get(gr, "grid", "origin_lon", required=True),
            origin_lat=_get(gr, "grid", "origin_lat", required=True),
            n_cols=int(_get(gr, "grid", "n_cols", required=True)),
            n_rows=int(_get(gr, "grid", "n_rows", required=True)),
            tile_km=float(_get(gr, "grid", "tile_km", 1.0)),
        )

        wi = _section(doc, "window")
        w_cols = int(_get(wi, "window", "w_cols", required=True))
        h_rows = int(_get(wi, "window", "h_rows", required=True))

        fi = _section(doc, "filters", required=False)
        radio_text = _get(fi, "filters", "radio")
        radio = None if radio_text is None else ingest.Radio(radio_text)
        plmn_text = _get(fi, "filters", "plmn")
        plmn = None if plmn_text is None else parse_plmn(plmn_text)
        bbox_raw = _get(fi, "filters", "bbox")
        bbox = None
        if bbox_raw is not None:
            if len(bbox_raw) != 4:
                raise ConfigError("filters.bbox must be [min_lon, min_lat, max_lon, max_lat]")
            bbox = tuple(float(v) for v in bbox_raw)

        return RunConfig(
            nr_config=nr_cfg,
            guard_fraction=guard,
            link=link,
            sensitivity_prbs=sensitivity_prbs,
            propagation=propagation,
            traffic=traffic,
            subs_per_weight=subs_per_weight,
            thresholds=thresholds,
            cost=cost,
            duty_fraction=duty,
            cost_multiplier=multiplier,
            grid=grid,
            w_cols=w_cols,
            h_rows=h_rows,
            radio=radio,
            plmn=plmn,
            bbox=bbox,
            input_path=doc.get("input"),
            out_dir=doc.get("out"),
        )
    except ConfigError:
        raise
    except (GnbdimError, ValueError, TypeError, KeyError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    return load_config_dict(doc)
