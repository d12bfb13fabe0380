"""HTTP/JSON preview API backing the elicitation UI.

All numbers shown in the UI originate here: the card editor posts its
judgements to /preview/scale, the weight workbench posts its ranking to
/preview/weights, and the exported configuration round-trips through
PUT /config.  Invariant violations return 400 with a violation list;
inconsistent pairwise judgements return 422 with the offending entries.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse

from . import deck, valuefunc
from .errors import ConfigError, JudgementError, PaciError
from .model import ModelConfig, aggregate, default_config, run_series
from .robustness import PerturbationSpec, envelope_from_matrix
from .series import RawSeries, compute_performances


def _violation_response(status: int, violations) -> JSONResponse:
    return JSONResponse(status_code=status, content={"violations": list(violations)})


def create_app(config_path=None, input_path=None, store_path=None) -> FastAPI:
    app = FastAPI(title="paci preview API", version="1")

    state = {
        "config": ModelConfig.load(config_path) if config_path else default_config(),
        "matrix": None,
        "series": None,
    }
    write_gate = threading.Lock()
    store = Path(store_path) if store_path else None

    if input_path:
        state["matrix"] = compute_performances(RawSeries.from_csv(input_path))

    @app.exception_handler(PaciError)
    async def _domain_error(_request, exc: PaciError):
        if isinstance(exc, ConfigError):
            return _violation_response(400, exc.violations)
        if isinstance(exc, JudgementError):
            return _violation_response(400, [str(exc)])
        return JSONResponse(status_code=400, content=exc.to_dict())

    @app.get("/config")
    def get_config():
        return state["config"].to_dict()

    @app.put("/config")
    def put_config(doc: dict = Body(...)):
        cfg = ModelConfig.from_dict(doc)
        with write_gate:
            state["config"] = cfg
            state["series"] = None
            if store:
                store.write_text(cfg.to_json() + "\n", encoding="utf-8")
        return {"ok": True, "digest": cfg.digest()}

    @app.post("/preview/scale")
    def preview_scale(doc: dict = Body(...)):
        seq, cards = deck.scale_judgements_from_dict(doc)
        table = deck.fill_pairwise_table(cards)
        entries = dict(table.entries)
        for item in doc.get("table", []):
            try:
                entries[(int(item["i"]), int(item["j"]))] = int(item["cards"])
            except (KeyError, TypeError, ValueError):
                raise JudgementError("table entries need integer i, j, cards") from None
        table = deck.PairwiseTable(size=table.size, entries=entries)
        violations = deck.check_consistency(table)
        if violations:
            return _violation_response(422, [v.to_dict() for v in violations])
        scale = deck.build_interval_scale(seq, cards)
        cap = float(doc.get("cap", valuefunc.CAP_DEFAULT))
        fn = valuefunc.from_dcm(scale, cap, seq)
        return {"scale": scale.to_dict(), "function": fn.to_dict()}

    @app.post("/preview/weights")
    def preview_weights(doc: dict = Body(...)):
        ranking = deck.ranking_from_dict(doc)
        weights = deck.build_weights(ranking)
        return {
            "weights": [float(w) for w in weights],
            "criteria": list(ranking.criteria),
        }

    @app.post("/preview/aggregate")
    def preview_aggregate(doc: dict = Body(...)):
        x = doc.get("x")
        if not isinstance(x, (list, tuple)) or len(x) != 5:
            raise ConfigError("x must be a list of five performance levels")
        point = aggregate([float(v) for v in x], state["config"])
        return {
            "overall": point.overall,
            "contributions": list(point.contributions),
            "state": point.state,
        }

    def _matrix():
        if state["matrix"] is None:
            raise ConfigError("no input series loaded", violations=[
                "server started without --input; /series and /envelope unavailable",
            ])
        return state["matrix"]

    @app.get("/series")
    def get_series():
        if state["series"] is None:
            state["series"] = run_series(_matrix(), state["config"])
        return state["series"].to_dicts()

    @app.get("/envelope")
    def get_envelope(delta_perf: float = 0.10, delta_value: float = 0.10,
                     delta_weight: float = 0.10):
        spec = PerturbationSpec(perf_delta=delta_perf, value_delta=delta_value,
                                weight_delta=delta_weight)
        env = envelope_from_matrix(_matrix(), state["config"], spec)
        return {
            "dates": [d.isoformat() for d in env.dates],
            "v_minus": [float(v) for v in env.v_minus],
            "v_nominal": [float(v) for v in env.v_nominal],
            "v_plus": [float(v) for v in env.v_plus],
            "mean_spread": env.mean_spread,
            "sd_spread": env.sd_spread,
        }

    return app
