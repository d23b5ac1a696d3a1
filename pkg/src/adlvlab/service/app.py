"""
FastAPI service wrapping the workbench: element queries, invariant
tables, bound verification, dataset generation, training and saliency
analysis.  The process-wide table memo persists across requests, so a
long-running server amortizes the reduction work over many queries.

Validation problems map to 422, exhausted node budgets to 409.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import adlv, dataset, isocrystal, ml, qbg, weyl
from . import models as M

_VALIDATION_ERRORS = (
    weyl.ParseError,
    isocrystal.InvalidNewtonPoint,
    dataset.LabelError,
    ml.SingularSystemError,
    ml.SingleClassError,
    ml.TrainingDivergedError,
    dataset.SampleError,
    ValueError,
)


def _dataset_matrices(ds: dataset.Dataset):
    X = np.array([row[0] for row in ds.rows], dtype=float)
    Y = np.array([row[1] for row in ds.rows], dtype=float)
    return X, Y


def _resolve_head(head: str, Y) -> str:
    if head != "auto":
        return head
    values = set(np.unique(Y).tolist())
    return "classification" if values <= {1.0, -1.0} else "regression"


def _fit_from_request(req: M.TrainRequest, X, Y, columns):
    if req.model == "linreg":
        cfg = ml.LinearConfig(
            fidelity="l2",
            regularizer="l2" if req.reg > 0 else "none",
            lam=req.reg,
            fit_intercept=req.intercept,
        )
        return ml.fit_linear(X, Y, cfg)
    if req.model == "lasso":
        cfg = ml.LinearConfig(
            fidelity="l2", regularizer="l1", lam=req.reg, fit_intercept=req.intercept
        )
        return ml.fit_linear(X, Y, cfg)
    if req.model == "l1":
        cfg = ml.LinearConfig(
            fidelity="l1",
            regularizer="l1",
            lam=req.reg,
            fit_intercept=req.intercept,
            epochs=req.epochs or 200,
        )
        return ml.fit_linear(X, Y, cfg)
    if req.model == "svm":
        cfg = ml.SVMConfig(lam=req.reg, epochs=req.epochs or 200, seed=req.seed)
        return ml.fit_svm(X, Y, config=cfg)
    if req.model == "mlp":
        cfg = ml.MLPConfig(
            hidden_layers=req.layers,
            width=req.width,
            head=_resolve_head(req.head, Y),
            lam=req.reg,
            seed=req.seed,
            epochs=req.epochs or 50,
        )
        return ml.fit_mlp(X, Y, cfg)
    raise ValueError(f"unknown model family {req.model!r}")


def create_app() -> FastAPI:
    app = FastAPI(title="adlvlab", version="0.1.0")

    @app.exception_handler(adlv.BudgetExceededError)
    async def _budget(request: Request, exc: adlv.BudgetExceededError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    for err in _VALIDATION_ERRORS:

        @app.exception_handler(err)
        async def _invalid(request: Request, exc: Exception):
            return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "cache_entries": adlv.global_cache_size()}

    @app.post("/element/parse", response_model=M.ParseResponse)
    def parse(req: M.ParseRequest):
        w = weyl.parse_element(req.w, req.n)
        d = weyl.decompose(w)
        return M.ParseResponse(
            canonical=weyl.print_element(w),
            length=weyl.affine_length(w),
            newton_point=isocrystal.render_vector(weyl.newton_point(w)),
            x_word=weyl.reduced_word(d.x),
            mu=list(d.mu),
            y_word=weyl.reduced_word(d.y),
            eta_length=weyl.perm_length(d.eta),
        )

    @app.post("/adlv/list", response_model=M.ListResponse)
    def list_table(req: M.ListRequest):
        w = weyl.parse_element(req.w, req.n)
        table = adlv.compute_table(w, budget=req.budget)
        entries = [
            M.TableEntry(nu=isocrystal.render_vector(nu), dim=dim, irr=irr)
            for nu in sorted(table, reverse=True)
            for dim, irr in [table[nu]]
        ]
        return M.ListResponse(entries=entries, lines=adlv.table_lines(table))

    @app.post("/adlv/query", response_model=M.QueryResponse)
    def query(req: M.QueryRequest):
        if len(req.nus) != len(req.prints):
            raise ValueError("nus and prints must align")
        w = weyl.parse_element(req.w, req.n)
        values = []
        for nu_text, what in zip(req.nus, req.prints):
            nu = isocrystal.parse_newton_point(nu_text, req.n)
            dim, irr = adlv.query(w, nu, budget=req.budget)
            if what == "dim":
                values.append("empty" if dim is None else str(dim))
            elif what == "irr":
                values.append(str(irr))
            else:
                raise ValueError(f"print selector must be dim or irr, got {what!r}")
        return M.QueryResponse(values=values, line=" ".join(values))

    @app.post("/qbg/verify-bound", response_model=M.VerifyBoundResponse)
    def verify_bound(req: M.VerifyBoundRequest):
        rep = qbg.verify_bound(
            req.n, req.max_len, budget=req.budget, check_witness=req.check_witness
        )
        return M.VerifyBoundResponse(**rep.to_dict())

    @app.post("/dataset/enumerate", response_model=M.GenerateResponse)
    def enumerate_dataset(req: M.EnumerateRequest):
        if req.filter not in dataset.PAIR_FILTERS:
            raise ValueError(f"filter must be one of {dataset.PAIR_FILTERS}")
        meta = dataset.generate_enumerated(
            req.out,
            req.n,
            req.max_len,
            req.filter,
            req.schema_name,
            req.label,
            workers=req.workers,
            budget=req.budget,
            seed=req.seed,
            extra_meta={"invocation": req.model_dump()},
        )
        return M.GenerateResponse(meta=meta, rows=meta["rows"], path=meta["path"])

    @app.post("/dataset/sample", response_model=M.GenerateResponse)
    def sample_dataset(req: M.SampleRequest):
        meta = dataset.generate_sampled(
            req.out,
            req.dataset_id,
            req.count,
            req.seed,
            req.n,
            req.schema_name,
            req.label,
            workers=req.workers,
            extra_meta={"invocation": req.model_dump()},
        )
        return M.GenerateResponse(meta=meta, rows=meta["rows"], path=meta["path"])

    @app.post("/dataset/stats", response_model=M.StatsResponse)
    def stats(req: M.StatsRequest):
        hist, cordial = dataset.stats_tables(req.n, req.max_len, budget=req.budget)
        return M.StatsResponse(
            delta_histogram=hist,
            cordiality=cordial,
            pair_total=sum(hist.values()),
            element_total=sum(g + b for g, b in cordial.values()),
        )

    @app.post("/ml/train", response_model=M.TrainResponse)
    def train(req: M.TrainRequest):
        ds = dataset.read_dataset(req.in_path)
        train_ds, test_ds = dataset.split(ds, req.split_seed)
        if req.oversample:
            train_ds = dataset.oversample(train_ds, req.split_seed)
        X_train, Y_train = _dataset_matrices(train_ds)
        X_test, Y_test = _dataset_matrices(test_ds)
        model = _fit_from_request(req, X_train, Y_train, ds.columns)
        m_train = ml.evaluate(model, X_train, Y_train)
        m_test = ml.evaluate(model, X_test, Y_test)
        coeffs = None
        if isinstance(model, (ml.LinearModel, ml.SVMModel)):
            coeffs = {c: float(v) for c, v in zip(ds.columns, model.beta)}
        if req.out:
            ml.save_model(
                req.out,
                model,
                meta={"invocation": req.model_dump(), "data": ds.meta},
            )
        family = req.model
        return M.TrainResponse(
            family=family,
            train=M.MetricsBody(accuracy=m_train.accuracy, mean_error=m_train.mean_error),
            test=M.MetricsBody(accuracy=m_test.accuracy, mean_error=m_test.mean_error),
            coefficients=coeffs,
            model_path=req.out,
            rows_train=len(train_ds.rows),
            rows_test=len(test_ds.rows),
        )

    @app.post("/ml/analyze", response_model=M.AnalyzeResponse)
    def analyze(req: M.AnalyzeRequest):
        model = ml.load_model(req.model_path)
        ds = dataset.read_dataset(req.data_path)
        X, Y = _dataset_matrices(ds)
        if req.seeds and isinstance(model, ml.MLPModel):
            import dataclasses

            cfg = model.config

            def retrain(seed):
                return ml.fit_mlp(X, Y, dataclasses.replace(cfg, seed=seed))

            vec = ml.averaged_sensitivity(retrain, X, Y, req.seeds)
        else:
            vec = ml.sensitivity(model, X, Y)
        return M.AnalyzeResponse(
            features=ds.columns,
            saliency=[float(v) for v in vec],
            table=ml.coefficient_table(ds.columns, vec),
        )

    @app.post("/selftest", response_model=M.SelfTestResponse)
    def selftest():
        checks = []
        weyl.convention_self_test()
        checks.append("notation pin: affine_Weyl([1,0,-1],[1,2]) == exp([0,2])")
        w = weyl.parse_element("affine_Weyl([1,1,-2],[2,1])", 3)
        lines = adlv.table_lines(adlv.compute_table(w))
        expected = [
            "Newton point = [1/2, 1/2, -1], dim = 1, irr = 1",
            "Newton point = [0, 0, 0], dim = 3, irr = 1",
        ]
        if lines != expected:
            raise AssertionError(f"worked example drifted: {lines}")
        checks.append("A2 worked example table")
        g = qbg.build_graph(3)
        assert qbg.distance(g, weyl.longest_perm(3), weyl.identity_perm(3)) == 1
        checks.append("QBG anchor d(w0, 1) = reflection length")
        return M.SelfTestResponse(ok=True, checks=checks)

    return app
