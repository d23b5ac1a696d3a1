"""
Dataset generation: exhaustive (w, nu) enumeration under the experiment
filters, seeded rejection sampling of w, feature extraction per schema,
labels, 80/20 splits, minority oversampling, and the Delta/cordiality
statistics tables.

Files are UTF-8 CSV: a `# meta: {json}` first line, then column headers
(`f_<name>, ..., label, w, nu`), then rows.  Floats are written with the
shortest round-tripping decimal rendering, so write/read is bit-exact.
Multi-worker generation writes `<base>.<start>-<end>.part` shards that
are concatenated in index order; the result is byte-identical to a
single-worker run.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from . import adlv, isocrystal, weyl
from .adlv import NuKey, newton_scale
from .weyl import AffineElement, Perm

GENERATOR_VERSION = "adlvlab-1"

# cleared when the shared memo grows past this many elements
CACHE_ENTRY_LIMIT = 900_000


class LabelError(ValueError):
    """Label requested for an empty pair, or unknown kind."""


class SampleError(RuntimeError):
    """Rejection sampling could not satisfy the constraints."""


# ---------------------------------------------------------------------------
# feature schemas


def _root_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _delta_row(p: Perm, pairs) -> list[float]:
    """delta(p(alpha_ij)) over i<j in lexicographic order."""
    return [1.0 if p[i] > p[j] else 0.0 for i, j in pairs]


@dataclass(frozen=True)
class FeatureSchema:
    name: str
    needs_nu: bool
    column_fn: Callable[[int], list[str]] = field(repr=False)
    extract_fn: Callable[[AffineElement, NuKey | None, int], list[float]] = field(
        repr=False
    )

    def columns(self, n: int) -> list[str]:
        return self.column_fn(n)

    def extract(self, w: AffineElement, nu_key: NuKey | None, n: int) -> list[float]:
        if self.needs_nu and nu_key is None:
            raise LabelError(f"schema {self.name} requires a Newton point")
        if not self.needs_nu and nu_key is not None:
            raise LabelError(f"schema {self.name} takes no Newton point")
        return self.extract_fn(w, nu_key, n)


def _pair_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}_{i + 1}{j + 1}" for i, j in _root_pairs(n)]


def _exp1_columns(n):
    return (
        [f"lam_{i + 1}" for i in range(n)]
        + [f"u_{i + 1}" for i in range(n)]
        + ["len_u", "len_w"]
    )


def _exp1_extract(w, _nu, n):
    lam, u = w
    return (
        [float(a) for a in lam]
        + [float(v + 1) for v in u]
        + [float(weyl.perm_length(u)), float(weyl.affine_length(w))]
    )


def _exp3_columns(n):
    return (
        _pair_names("x", n)
        + ["len_x"]
        + [f"mu_{i + 1}" for i in range(n)]
        + _pair_names("yinv", n)
        + ["len_y", "len_w"]
    )


def _exp3_extract(w, _nu, n):
    d = weyl.decompose(w)
    pairs = _root_pairs(n)
    return (
        _delta_row(d.x, pairs)
        + [float(weyl.perm_length(d.x))]
        + [float(m) for m in d.mu]
        + _delta_row(weyl.perm_inverse(d.y), pairs)
        + [float(weyl.perm_length(d.y)), float(weyl.affine_length(w))]
    )


def _exp4_columns(n):
    return _pair_names("yinv", n) + ["len_y"]


def _exp4_extract(w, _nu, n):
    d = weyl.decompose(w)
    return _delta_row(weyl.perm_inverse(d.y), _root_pairs(n)) + [
        float(weyl.perm_length(d.y))
    ]


def _exp5_columns(n):
    return ["len_x", "len_y", "len_xy", "len_yx", "len_y_star_x", "len_y_down_x"]


def _exp5_extract(w, _nu, n):
    d = weyl.decompose(w)
    star, down = weyl.demazure_products(d.y, d.x)
    return [
        float(weyl.perm_length(d.x)),
        float(weyl.perm_length(d.y)),
        float(weyl.perm_length(weyl.perm_mult(d.x, d.y))),
        float(weyl.perm_length(weyl.perm_mult(d.y, d.x))),
        float(weyl.perm_length(star)),
        float(weyl.perm_length(down)),
    ]


def _sec5_columns(n):
    return (
        _pair_names("x", n)
        + [f"mu_{i + 1}" for i in range(n)]
        + _pair_names("yinv", n)
        + _pair_names("eta", n)
        + ["len_w"]
        + [f"nu_{i + 1}" for i in range(n)]
        + [f"lam_{i + 1}" for i in range(n)]
    )


def _sec5_extract(w, nu_key, n):
    d = weyl.decompose(w)
    pairs = _root_pairs(n)
    scale = newton_scale(n)
    floor = adlv._floor_key(nu_key, n)
    return (
        _delta_row(d.x, pairs)
        + [float(m) for m in d.mu]
        + _delta_row(weyl.perm_inverse(d.y), pairs)
        + _delta_row(d.eta, pairs)
        + [float(weyl.affine_length(w))]
        + [k / scale for k in nu_key]
        + [float(f) for f in floor]
    )


def _sec5_vmu_columns(n):
    return _sec5_columns(n) + ["dim_v_mu_lam"]


def _sec5_vmu_extract(w, nu_key, n):
    base = _sec5_extract(w, nu_key, n)
    mu = weyl.decompose(w).mu
    floor = adlv._floor_key(nu_key, n)
    return base + [float(isocrystal.weight_multiplicity(mu, floor))]


SCHEMAS: dict[str, FeatureSchema] = {
    "EXP1": FeatureSchema("EXP1", False, _exp1_columns, _exp1_extract),
    "EXP3": FeatureSchema("EXP3", False, _exp3_columns, _exp3_extract),
    "EXP4": FeatureSchema("EXP4", False, _exp4_columns, _exp4_extract),
    "EXP5": FeatureSchema("EXP5", False, _exp5_columns, _exp5_extract),
    "SEC5_46": FeatureSchema("SEC5_46", True, _sec5_columns, _sec5_extract),
    "SEC5_47": FeatureSchema("SEC5_47", True, _sec5_vmu_columns, _sec5_vmu_extract),
}


def extract_features(schema: FeatureSchema | str, w: AffineElement, nu=None) -> list[float]:
    """Feature vector for (w, nu) under the named schema; nu is required for
    the SEC5_* schemas and forbidden otherwise."""
    if isinstance(schema, str):
        schema = SCHEMAS[schema]
    n = len(w[0])
    key = None if nu is None else adlv.newton_to_key(isocrystal.as_newton_point(nu), n)
    return schema.extract(w, key, n)


# ---------------------------------------------------------------------------
# labels

LABEL_KINDS = ("DIM", "DIM_MINUS_HALFLEN", "NONEMPTY_PM1", "VD_NEQ_DIM_PM1", "IRR")


def _label_from_key(kind: str, w: AffineElement, nu_key: NuKey, *, cache=None, budget=None) -> float:
    n = len(w[0])
    table = adlv.compute_table_scaled(w, cache=cache, budget=budget)
    entry = table.get(nu_key)
    if kind == "NONEMPTY_PM1":
        return 1.0 if entry is not None else -1.0
    if entry is None:
        raise LabelError(f"label {kind} undefined for empty X_w(b)")
    dim, irr = entry
    if kind == "DIM":
        return float(dim)
    if kind == "DIM_MINUS_HALFLEN":
        return dim - weyl.affine_length(w) / 2
    if kind == "IRR":
        return float(irr)
    if kind == "VD_NEQ_DIM_PM1":
        lw = weyl._im_length(w)
        leta = weyl.perm_length(weyl.eta(w))
        twice_vd = lw + leta - adlv._pair_2rho_key(nu_key, n) - adlv._defect_key(nu_key, n)
        return 1.0 if twice_vd != 2 * dim else -1.0
    raise LabelError(f"unknown label kind {kind!r}")


def label(kind: str, w: AffineElement, nu, *, cache=None, budget=None) -> float:
    """Numeric label for the pair (w, nu) per the experiment definitions."""
    key = adlv.newton_to_key(isocrystal.as_newton_point(nu), len(w[0]))
    return _label_from_key(kind, w, key, cache=cache, budget=budget)


# ---------------------------------------------------------------------------
# pair enumeration

PAIR_FILTERS = ("MAZUR", "NONEMPTY", "NONEMPTY_EQDIM", "Y_EQ_1")


def _pairs_for_element(
    w: AffineElement, pair_filter: str, *, cache=None, budget=None
) -> list[NuKey]:
    n = len(w[0])
    if pair_filter == "MAZUR":
        mu = weyl.decompose(w).mu
        return [adlv.newton_to_key(nu, n) for nu in isocrystal.enumerate_newton_leq(mu)]
    if pair_filter == "NONEMPTY":
        return sorted(adlv.compute_table_scaled(w, cache=cache, budget=budget))
    if pair_filter == "NONEMPTY_EQDIM":
        deltas = adlv.delta_values_scaled(w, cache=cache, budget=budget)
        return sorted(k for k, d in deltas.items() if d == 0)
    if pair_filter == "Y_EQ_1":
        if weyl.decompose(w).y != weyl.identity_perm(n):
            return []
        return sorted(adlv.compute_table_scaled(w, cache=cache, budget=budget))
    raise ValueError(f"unknown pair filter {pair_filter!r}")


def enumerate_pairs(
    n: int,
    max_len: int,
    pair_filter: str,
    *,
    budget: int | None = None,
    cache: dict | None = None,
) -> Iterator[tuple[AffineElement, isocrystal.NewtonPoint]]:
    """All (w, nu) with l(w) < max_len passing the filter, in deterministic
    order: w by (length, canonical key), nu ascending lexicographic."""
    for w, key in enumerate_pair_keys(n, max_len, pair_filter, budget=budget, cache=cache):
        yield w, adlv.key_to_newton(key, n)


def enumerate_pair_keys(
    n: int,
    max_len: int,
    pair_filter: str,
    *,
    budget: int | None = None,
    cache: dict | None = None,
) -> Iterator[tuple[AffineElement, NuKey]]:
    for w in weyl.elements_of_length_below(n, max_len):
        for key in _pairs_for_element(w, pair_filter, cache=cache, budget=budget):
            yield w, key


# ---------------------------------------------------------------------------
# seeded sampling (datasets 1-3)


def _index_rng(seed: int, index: int) -> random.Random:
    # one child stream per draw, so worker partitioning cannot change results
    return random.Random(f"{seed}:{index}")


_box_cache: dict[tuple[int, int, int], list[tuple[int, ...]]] = {}


def _strictly_decreasing_sum0(lo: int, hi: int, n: int) -> list[tuple[int, ...]]:
    from itertools import combinations

    key = (lo, hi, n)
    if key not in _box_cache:
        _box_cache[key] = [
            c for c in combinations(range(hi, lo - 1, -1), n) if sum(c) == 0
        ]
    return _box_cache[key]


def _zero_key(n: int) -> NuKey:
    return (0,) * n


def _maybe_trim_cache() -> None:
    if adlv.global_cache_size() > CACHE_ENTRY_LIMIT:
        adlv.clear_cache()


def sample_one(dataset_id: int, n: int, seed: int, index: int, *, max_tries: int = 200000) -> AffineElement:
    """Draw number `index` of the seeded stream for dataset 1, 2 or 3.

    Proposals are uniform over a finite box, rejected against the dataset
    filter: (1) lambda in [-9,9]^n summing to 0 and any finite part, kept
    when l(w) < 30 and X_w(1) is nonempty; (2) mu strictly decreasing in
    (-7,7) summing to 0 with arbitrary x, y; (3) mu strictly decreasing in
    (-9,9) with x = 1.  Draws are with replacement across indices.
    """
    rng = _index_rng(seed, index)
    zero = _zero_key(n)
    if dataset_id == 1:
        for _ in range(max_tries):
            lam = tuple(rng.randint(-9, 9) for _ in range(n))
            if sum(lam) != 0:
                continue
            u = list(range(n))
            rng.shuffle(u)
            w = (lam, tuple(u))
            if weyl._im_length(w) >= 30:
                continue
            if zero in adlv.compute_table_scaled(w):
                return w
        raise SampleError(f"dataset 1 rejection cap hit at index {index}")
    if dataset_id in (2, 3):
        box = _strictly_decreasing_sum0(-6, 6, n) if dataset_id == 2 else _strictly_decreasing_sum0(-8, 8, n)
        if not box:
            raise SampleError("empty proposal box")
        perms = weyl.all_perms(n)
        for _ in range(max_tries):
            mu = rng.choice(box)
            y = rng.choice(perms)
            x = rng.choice(perms) if dataset_id == 2 else weyl.identity_perm(n)
            w = weyl.multiply(
                weyl.multiply(((0,) * n, x), weyl.translation(mu)), ((0,) * n, y)
            )
            if zero in adlv.compute_table_scaled(w):
                return w
        raise SampleError(f"dataset {dataset_id} rejection cap hit at index {index}")
    raise ValueError(f"unknown dataset id {dataset_id!r}")


def sample_w(dataset_id: int, count: int, seed: int, n: int) -> list[AffineElement]:
    """Seeded, reproducible sample of `count` elements (with replacement)."""
    out = []
    for index in range(count):
        out.append(sample_one(dataset_id, n, seed, index))
        if index % 200 == 0:
            _maybe_trim_cache()
    return out


# ---------------------------------------------------------------------------
# dataset files

Row = tuple[tuple[float, ...], float, str, str]  # features, label, w text, nu text


@dataclass
class Dataset:
    meta: dict
    columns: list[str]
    rows: list[Row]


def _render_float(x: float) -> str:
    return repr(float(x))


def _row_record(features, label_value, w_text, nu_text) -> list[str]:
    return [_render_float(v) for v in features] + [
        _render_float(label_value),
        w_text,
        nu_text,
    ]


def write_dataset(path: str, ds: Dataset) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# meta: " + json.dumps(ds.meta, sort_keys=True) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"f_{c}" for c in ds.columns] + ["label", "w", "nu"])
        for features, label_value, w_text, nu_text in ds.rows:
            writer.writerow(_row_record(features, label_value, w_text, nu_text))


def read_dataset(path: str) -> Dataset:
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("# meta: "):
            raise ValueError(f"{path}: missing '# meta:' line")
        meta = json.loads(first[len("# meta: ") :])
        reader = csv.reader(fh)
        header = next(reader)
        n_feat = len(header) - 3
        columns = [c[2:] for c in header[:n_feat]]
        rows: list[Row] = []
        for rec in reader:
            feats = tuple(float(v) for v in rec[:n_feat])
            rows.append((feats, float(rec[n_feat]), rec[n_feat + 1], rec[n_feat + 2]))
    return Dataset(meta=meta, columns=columns, rows=rows)


def revalidate(ds: Dataset) -> None:
    """Recompute every row's features from its provenance; raises on drift."""
    schema = SCHEMAS[ds.meta["schema"]]
    n = ds.meta["n"]
    for features, _, w_text, nu_text in ds.rows:
        w = weyl.parse_element(w_text, n)
        nu = isocrystal.parse_newton_point(nu_text, n) if nu_text else None
        again = extract_features(schema, w, nu)
        if tuple(float(v) for v in again) != features:
            raise AssertionError(f"row features drifted for {w_text} / {nu_text}")


def _nu_text(key: NuKey, n: int) -> str:
    return isocrystal.render_vector(adlv.key_to_newton(key, n))


def build_rows(
    schema: FeatureSchema,
    label_kind: str,
    pairs: Iterable[tuple[AffineElement, NuKey | None]],
    n: int,
) -> list[Row]:
    rows: list[Row] = []
    zero = _zero_key(n)
    for w, key in pairs:
        feat_key = key if schema.needs_nu else None
        label_key = key if key is not None else zero
        features = tuple(schema.extract(w, feat_key, n))
        value = _label_from_key(label_kind, w, label_key)
        rows.append(
            (features, value, weyl.print_element(w), _nu_text(key, n) if key else "")
        )
    return rows


def _meta(schema, n, label_kind, seed, extra) -> dict:
    meta = {
        "schema": schema.name,
        "n": n,
        "label": label_kind,
        "seed": seed,
        "generator": GENERATOR_VERSION,
    }
    meta.update(extra)
    return meta


# ---------------------------------------------------------------------------
# generation entry points (sharded)


def _shard_bounds(total: int, workers: int) -> list[tuple[int, int]]:
    size = (total + workers - 1) // workers
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def _sample_rows_worker(args) -> list[list[str]]:
    dataset_id, n, seed, lo, hi, schema_name, label_kind = args
    schema = SCHEMAS[schema_name]
    zero = _zero_key(n)
    records = []
    for index in range(lo, hi):
        w = sample_one(dataset_id, n, seed, index)
        features = schema.extract(w, None, n)
        value = _label_from_key(label_kind, w, zero)
        records.append(_row_record(features, value, weyl.print_element(w), ""))
        if index % 200 == 0:
            _maybe_trim_cache()
    return records


def _enumerate_rows_worker(args) -> list[list[str]]:
    elements, n, pair_filter, schema_name, label_kind, budget = args
    schema = SCHEMAS[schema_name]
    records = []
    for w in elements:
        for key in _pairs_for_element(w, pair_filter, budget=budget):
            feat_key = key if schema.needs_nu else None
            features = schema.extract(w, feat_key, n)
            value = _label_from_key(label_kind, w, key)
            records.append(
                _row_record(features, value, weyl.print_element(w), _nu_text(key, n))
            )
    return records


def _write_sharded(path: str, meta: dict, columns: list[str], tasks, worker_fn, workers: int) -> int:
    """Run tasks (one per shard), write part files, concatenate in order."""
    import concurrent.futures

    header = [f"f_{c}" for c in columns] + ["label", "w", "nu"]
    if workers <= 1:
        all_records = [rec for task in tasks for rec in worker_fn(task)]
        shards = [all_records]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(worker_fn, tasks))
    part_names = []
    offset = 0
    for shard in shards:
        name = f"{path}.{offset}-{offset + len(shard)}.part"
        with open(name, "w", encoding="utf-8", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerows(shard)
        part_names.append(name)
        offset += len(shard)
    import os

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# meta: " + json.dumps(meta, sort_keys=True) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for name in part_names:
            with open(name, encoding="utf-8") as part:
                fh.write(part.read())
            os.remove(name)
    return offset


def generate_sampled(
    path: str,
    dataset_id: int,
    count: int,
    seed: int,
    n: int,
    schema_name: str,
    label_kind: str,
    *,
    workers: int = 1,
    extra_meta: dict | None = None,
) -> dict:
    """Sampled dataset (datasets 1-3) written to `path`; returns metadata."""
    schema = SCHEMAS[schema_name]
    meta = _meta(schema, n, label_kind, seed, {"dataset_id": dataset_id, "count": count, "filter": f"DATASET{dataset_id}"})
    meta.update(extra_meta or {})
    bounds = _shard_bounds(count, max(1, workers))
    tasks = [(dataset_id, n, seed, lo, hi, schema_name, label_kind) for lo, hi in bounds]
    total = _write_sharded(path, meta, schema.columns(n), tasks, _sample_rows_worker, workers)
    return {**meta, "rows": total, "path": path}


def generate_enumerated(
    path: str,
    n: int,
    max_len: int,
    pair_filter: str,
    schema_name: str,
    label_kind: str,
    *,
    workers: int = 1,
    budget: int | None = None,
    seed: int = 0,
    extra_meta: dict | None = None,
) -> dict:
    """Exhaustive filtered dataset written to `path`; returns metadata."""
    schema = SCHEMAS[schema_name]
    meta = _meta(
        schema, n, label_kind, seed, {"max_len": max_len, "filter": pair_filter}
    )
    meta.update(extra_meta or {})
    elements = list(weyl.elements_of_length_below(n, max_len))
    workers = max(1, workers)
    bounds = _shard_bounds(len(elements), workers) if elements else []
    tasks = [
        (elements[lo:hi], n, pair_filter, schema_name, label_kind, budget)
        for lo, hi in bounds
    ]
    total = _write_sharded(path, meta, schema.columns(n), tasks, _enumerate_rows_worker, workers)
    return {**meta, "rows": total, "path": path}


# ---------------------------------------------------------------------------
# splits and resampling


def split(ds: Dataset, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffle then 80/20 partition; disjoint and exhaustive."""
    if len(ds.rows) < 5:
        raise ValueError("need at least 5 rows to split")
    idx = list(range(len(ds.rows)))
    random.Random(seed).shuffle(idx)
    cut = int(0.8 * len(idx))
    train = [ds.rows[i] for i in idx[:cut]]
    test = [ds.rows[i] for i in idx[cut:]]
    return (
        Dataset({**ds.meta, "split": "train", "split_seed": seed}, ds.columns, train),
        Dataset({**ds.meta, "split": "test", "split_seed": seed}, ds.columns, test),
    )


def oversample(ds: Dataset, seed: int) -> Dataset:
    """Duplicate minority-class rows (with replacement) until all label
    classes match the majority count; provenance is untouched."""
    groups: dict[float, list[Row]] = {}
    for row in ds.rows:
        groups.setdefault(row[1], []).append(row)
    target = max(len(g) for g in groups.values())
    rng = random.Random(seed)
    rows = list(ds.rows)
    for value in sorted(groups):
        need = target - len(groups[value])
        if need > 0:
            rows.extend(rng.choice(groups[value]) for _ in range(need))
    return Dataset({**ds.meta, "oversampled": True}, ds.columns, rows)


# ---------------------------------------------------------------------------
# statistics tables


def stats_tables(
    n: int,
    max_len: int,
    *,
    budget: int | None = None,
    cache: dict | None = None,
) -> tuple[dict[int, int], dict[int, tuple[int, int]]]:
    """(delta histogram over NONEMPTY pairs, cordial/non-cordial element
    counts grouped by l(eta(w))) for all w with l(w) < max_len."""
    hist: dict[int, int] = {}
    cordial: dict[int, tuple[int, int]] = {}
    for count, w in enumerate(weyl.elements_of_length_below(n, max_len)):
        if cache is None and count % 2000 == 0:
            _maybe_trim_cache()
        deltas = adlv.delta_values_scaled(w, cache=cache, budget=budget)
        for d in deltas.values():
            hist[d] = hist.get(d, 0) + 1
        leta = weyl.perm_length(weyl.eta(w))
        good, bad = cordial.get(leta, (0, 0))
        if max(deltas.values()) == 0:
            cordial[leta] = (good + 1, bad)
        else:
            cordial[leta] = (good, bad + 1)
    return hist, cordial
