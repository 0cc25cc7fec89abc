"""Command-line front end.

Every command writes machine-readable artifacts (CSV by default, JSON as a
mirror of the same schema) whose header echoes the effective configuration,
so identical flags and seed reproduce byte-identical files. Exit codes are
stable: 0 success, 2 usage/configuration, 3 numeric failure, 4 data or IO.

A flat ``key=value`` config file can supply any flag value (flag names with
dashes replaced by underscores); explicit flags win, unknown keys are
rejected. ``QSERIES_OUTDIR`` sets the directory for relative output paths.
"""

import json
import os
import sys
from pathlib import Path

import click
import numpy as np

from . import fourier, hamiltonian, model, signals, training
from .errors import ConfigError, DataError, NumericError

OUTDIR_ENV = "QSERIES_OUTDIR"

AM_DEFAULTS = {"am_carrier": 10.0, "am_modulator": 1.0}

# Small steps let the adaptive optimizer settle well below 1e-2 RMSE on the
# few-parameter interpolation models instead of orbiting the minimum.
INTERPOLATE_LEARNING_RATE = 0.02


# ---------------------------------------------------------------------------
# config-file merging and output helpers
# ---------------------------------------------------------------------------


def _parse_config_file(path):
    entries = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read config file {path}: {exc}") from exc
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise click.UsageError(f"{path}:{line_no}: expected key=value")
        key, value = line.split("=", 1)
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _merge_config(ctx, config_path, extra_keys=()):
    """Fill parameters not given on the command line from the config file.

    Keys are flag names with dashes as underscores (e.g. ``train_n``).
    Returns leftover entries for ``extra_keys`` (settings that have no
    dedicated flag, e.g. AM component frequencies); any other unknown key
    is a usage error.
    """
    extras = {}
    if not config_path:
        return extras
    entries = _parse_config_file(config_path)
    by_flag = {}
    for param in ctx.command.params:
        for opt in param.opts:
            by_flag[opt.lstrip("-").replace("-", "_")] = param
    for key, raw_value in entries.items():
        if key in extra_keys:
            extras[key] = raw_value
            continue
        param = by_flag.get(key)
        if param is None or param.name == "config":
            raise click.UsageError(f"unknown config key {key!r}")
        source = ctx.get_parameter_source(param.name)
        if source is not None and source.name == "COMMANDLINE":
            continue
        ctx.params[param.name] = param.type.convert(raw_value, param, ctx)
    return extras


def _resolve_out(out, fmt, default_stem):
    path = Path(out) if out else Path(f"{default_stem}.{fmt}")
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _sibling(path, tag):
    return path.with_name(f"{path.stem}_{tag}{path.suffix}")


def _cell(value):
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_table(path, fmt, config, columns, rows):
    config = {key: config[key] for key in sorted(config)}
    if fmt == "json":
        payload = {
            "config": config,
            "columns": list(columns),
            "rows": [[(int(v) if isinstance(v, (int, np.integer)) else float(v))
                      for v in row] for row in rows],
        }
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return
    lines = [f"# {key} = {value}" for key, value in config.items()]
    lines.append(",".join(columns))
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _echo_summary(header):
    click.echo(" ".join(f"{key}={value}" for key, value in sorted(header.items())))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@click.group()
def cli():
    """Layered data-reuploading models: train, analyze, and evolve."""


_common = [
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--out", type=str, default=None, help="Output file path."),
    click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                 default="csv", show_default=True),
    click.option("--config", type=str, default=None,
                 help="Flat key=value config file; flags override it."),
]


def _with_common(func):
    for decorator in reversed(_common):
        func = decorator(func)
    return func


@cli.command()
@click.option("--signal", type=click.Choice(list(signals.SIGNAL_KINDS)),
              default="sine", show_default=True)
@click.option("--freq", type=float, default=None,
              help="Signal frequency in Hz (fundamental for AM).")
@click.option("--samples", type=int, default=30, show_default=True)
@click.option("--layers", type=int, default=3, show_default=True)
@click.option("--qubits", type=int, default=1, show_default=True)
@click.option("--epochs", type=int, default=400, show_default=True)
@_with_common
@click.pass_context
def interpolate(ctx, signal, freq, samples, layers, qubits, epochs, seed, out,
                fmt, config):
    """Fit a model to a generated signal; write target/prediction data,
    the loss history, and the trained model's Fourier coefficients."""
    extras = _merge_config(ctx, config, extra_keys=tuple(AM_DEFAULTS))
    p = ctx.params
    signal, freq, samples = p["signal"], p["freq"], p["samples"]
    layers, qubits, epochs, seed = p["layers"], p["qubits"], p["epochs"], p["seed"]
    out, fmt = p["out"], p["fmt"]

    min_samples = 2 * layers + 1
    if samples < min_samples:
        raise click.UsageError(
            f"{samples} samples cannot resolve a {layers}-layer model: the "
            f"Nyquist limit for bandwidth {layers} is {min_samples} samples "
            f"per period"
        )
    spec_kwargs = {"kind": signal, "frequency": freq, "n_samples": samples}
    if signal == "am":
        spec_kwargs["am_carrier"] = float(extras.get("am_carrier", AM_DEFAULTS["am_carrier"]))
        spec_kwargs["am_modulator"] = float(extras.get("am_modulator", AM_DEFAULTS["am_modulator"]))
    spec = signals.SignalSpec(**spec_kwargs)
    dataset = signals.generate_signal(spec)

    cfg = model.ModelConfig(n_qubits=qubits, n_layers=layers, n_features=1)
    params = model.ParameterSet.initial(cfg, seed=seed)
    report = training.fit(
        cfg, params, dataset,
        training.TrainConfig(max_epochs=epochs,
                             learning_rate=INTERPOLATE_LEARNING_RATE, seed=seed))
    predictions = report.predict(cfg, dataset.inputs)
    final_rmse = float(np.sqrt(np.mean((predictions - dataset.targets) ** 2)))

    header = {
        "command": "interpolate", "signal": signal, "freq": spec.frequency,
        "samples": samples, "layers": layers, "qubits": qubits,
        "epochs": epochs, "seed": seed, "rmse_final": final_rmse,
        "epochs_run": report.epochs_run,
    }
    path = _resolve_out(out, fmt, "interpolate")
    _write_table(path, fmt, header, ["x", "target", "prediction"],
                 [[x, t, p] for x, t, p in
                  zip(dataset.inputs[:, 0], dataset.targets, predictions)])
    _write_table(_sibling(path, "loss"), fmt, header, ["epoch", "loss"],
                 list(enumerate(report.loss_history)))

    series = fourier.extract_coefficients(
        lambda x: model.evaluate(cfg, report.final_params, [x]), K=layers + 5)
    _write_table(_sibling(path, "coeffs"), fmt, header,
                 ["frequency", "re", "im", "abs"],
                 [[w, series.coefficient(w).real, series.coefficient(w).imag,
                   abs(series.coefficient(w))] for w in series.frequencies])
    _echo_summary({"rmse_final": final_rmse, "out": path})


def _load_classification(dataset_name, n_total, seed):
    if dataset_name.startswith("file:"):
        loaded = signals.load_dataset(dataset_name[5:], kind="binary")
        if len(loaded) < n_total:
            raise DataError(
                f"dataset has {len(loaded)} rows, need {n_total} for the split"
            )
        order = np.random.default_rng(seed).permutation(len(loaded))
        return loaded.subset(order[:n_total])
    return signals.generate_classification(dataset_name, n_total, seed)


@cli.command()
@click.option("--dataset", "dataset_name", type=str, default="circle",
              show_default=True,
              help="circle, square, crown, or file:<path> to a dataset CSV.")
@click.option("--qubits", type=int, default=2, show_default=True)
@click.option("--layers", type=int, default=6, show_default=True)
@click.option("--mode", type=click.Choice(["binary", "multiclass"]),
              default="binary", show_default=True)
@click.option("--train-n", type=int, default=200, show_default=True)
@click.option("--test-n", type=int, default=200, show_default=True)
@click.option("--epochs", type=int, default=300, show_default=True)
@_with_common
@click.pass_context
def classify(ctx, dataset_name, qubits, layers, mode, train_n, test_n, epochs,
             seed, out, fmt, config):
    """Train a classifier on a 2-D dataset; write per-point predictions and
    an accuracy summary."""
    _merge_config(ctx, config)
    p = ctx.params
    dataset_name, qubits, layers, mode = (p["dataset_name"], p["qubits"],
                                          p["layers"], p["mode"])
    train_n, test_n, epochs, seed = p["train_n"], p["test_n"], p["epochs"], p["seed"]
    out, fmt = p["out"], p["fmt"]

    full = _load_classification(dataset_name, train_n + test_n, seed)
    train, test = full.subset(slice(0, train_n)), full.subset(slice(train_n, None))

    readout = "expectation" if mode == "binary" else "probabilities"
    cfg = model.ModelConfig(
        n_qubits=qubits, n_layers=layers,
        n_features=min(full.n_features, qubits), readout=readout)

    def model_view(split):
        # a model with fewer features than data columns reads the first ones
        kind = "multiclass" if mode == "multiclass" else split.kind
        targets = (split.targets > 0).astype(int) if mode == "multiclass" else split.targets
        return signals.LabeledDataset(
            split.inputs[:, :cfg.n_features], targets,
            kind=kind, n_classes=2 if kind != "regression" else None)

    train_view, test_view = model_view(train), model_view(test)
    params = model.ParameterSet.initial(cfg, seed=seed)
    report = training.fit(cfg, params, train_view,
                          training.TrainConfig(max_epochs=epochs, seed=seed))
    accuracy = training.classification_accuracy(
        cfg, report.final_params, test_view, mode)

    predictions = [
        (model.predict_binary(cfg, report.final_params, row) if mode == "binary"
         else model.predict_multiclass(cfg, report.final_params, row, test_view.n_classes))
        for row in test_view.inputs
    ]
    header = {
        "command": "classify", "dataset": dataset_name, "qubits": qubits,
        "layers": layers, "mode": mode, "train_n": train_n, "test_n": test_n,
        "epochs": epochs, "seed": seed, "accuracy": accuracy,
        "parameters": cfg.n_parameters,
    }
    path = _resolve_out(out, fmt, "classify")
    columns = [f"x{i + 1}" for i in range(test.n_features)] + ["label", "prediction"]
    rows = [list(row) + [int(label), int(pred)]
            for row, label, pred in zip(test.inputs, test_view.targets, predictions)]
    _write_table(path, fmt, header, columns, rows)
    _echo_summary({"accuracy": accuracy, "parameters": cfg.n_parameters,
                   "layers": layers, "out": path})


@cli.command()
@click.option("--qubits", type=int, default=1, show_default=True)
@click.option("--layers", type=int, default=3, show_default=True)
@click.option("--K", "k_order", type=int, default=8, show_default=True,
              help="Extract coefficients for frequencies -K..K.")
@click.option("--train-signal", type=click.Choice(list(signals.SIGNAL_KINDS)),
              default=None, help="Fit this signal before extracting.")
@click.option("--epochs", type=int, default=300, show_default=True)
@_with_common
@click.pass_context
def coeffs(ctx, qubits, layers, k_order, train_signal, epochs, seed, out, fmt,
           config):
    """Extract the model's Fourier coefficients by sampling; cross-check
    against the exact analytic series when small enough."""
    _merge_config(ctx, config)
    p = ctx.params
    qubits, layers, k_order = p["qubits"], p["layers"], p["k_order"]
    train_signal, epochs, seed = p["train_signal"], p["epochs"], p["seed"]
    out, fmt = p["out"], p["fmt"]
    if k_order < 0:
        raise click.UsageError("--K must be >= 0")

    cfg = model.ModelConfig(n_qubits=qubits, n_layers=layers, n_features=1)
    params = model.ParameterSet.initial(cfg, seed=seed)
    if train_signal is not None:
        spec_kwargs = {"kind": train_signal, "n_samples": max(60, 2 * layers + 1)}
        if train_signal == "am":
            spec_kwargs.update(AM_DEFAULTS)
        dataset = signals.generate_signal(signals.SignalSpec(**spec_kwargs))
        report = training.fit(
            cfg, params, dataset,
            training.TrainConfig(max_epochs=epochs,
                                 learning_rate=INTERPOLATE_LEARNING_RATE, seed=seed))
        params = report.final_params

    series = fourier.extract_coefficients(
        lambda x: model.evaluate(cfg, params, [x]), K=k_order)
    header = {
        "command": "coeffs", "qubits": qubits, "layers": layers, "K": k_order,
        "seed": seed, "train_signal": train_signal or "none", "epochs": epochs,
    }
    if qubits <= 3:
        exact = fourier.analytic_model_series(cfg, params)
        header["analytic_max_disagreement"] = fourier.max_coefficient_difference(
            _truncate(exact, k_order), series)

    path = _resolve_out(out, fmt, "coeffs")
    _write_table(path, fmt, header, ["frequency", "re", "im", "abs"],
                 [[w, series.coefficient(w).real, series.coefficient(w).imag,
                   abs(series.coefficient(w))] for w in series.frequencies])
    summary = {"out": path}
    if "analytic_max_disagreement" in header:
        summary["analytic_max_disagreement"] = header["analytic_max_disagreement"]
    _echo_summary(summary)


def _truncate(series, k_order):
    kept = {w: c for w, c in series.coefficients.items() if abs(w) <= k_order + 1e-9}
    return fourier.FourierSeries(coefficients=kept)


@cli.command()
@click.option("--hamiltonian", "hamiltonian_path", type=str, required=True,
              help="Text file of 'coefficient pauli_string' lines.")
@click.option("--t", "time_value", type=float, default=1.0, show_default=True)
@click.option("--r-max", type=int, default=64, show_default=True)
@click.option("--epsilon", type=float, default=None,
              help="Also search the smallest r meeting this error.")
@_with_common
@click.pass_context
def trotter(ctx, hamiltonian_path, time_value, r_max, epsilon, seed, out, fmt,
            config):
    """Sweep Trotter step counts against exact evolution; write (r, error)."""
    _merge_config(ctx, config)
    p = ctx.params
    hamiltonian_path, time_value = p["hamiltonian_path"], p["time_value"]
    r_max, epsilon, seed = p["r_max"], p["epsilon"], p["seed"]
    out, fmt = p["out"], p["fmt"]
    if r_max < 1:
        raise click.UsageError("--r-max must be >= 1")

    h = hamiltonian.load_pauli_sum(hamiltonian_path)
    exact = hamiltonian.exact_evolution(h, time_value)
    rows = []
    r = 1
    while r <= r_max:
        error = hamiltonian.evolution_error(
            hamiltonian.trotter2(h, time_value, r), exact)
        rows.append([r, error])
        r *= 2

    header = {
        "command": "trotter", "hamiltonian": hamiltonian_path, "t": time_value,
        "r_max": r_max, "seed": seed, "n_terms": h.n_terms, "qubits": h.n_qubits,
    }
    summary = {}
    if epsilon is not None:
        result = hamiltonian.steps_for_epsilon(h, time_value, epsilon)
        header.update(epsilon=epsilon, r_required=result.r,
                      r_error=result.error,
                      formula_estimate=result.formula_estimate)
        summary.update(r_required=result.r, formula_estimate=result.formula_estimate)

    path = _resolve_out(out, fmt, "trotter")
    _write_table(path, fmt, header, ["r", "error"], rows)
    summary["out"] = path
    _echo_summary(summary)


# ---------------------------------------------------------------------------
# entry point with the stable exit-code contract
# ---------------------------------------------------------------------------


def main(argv=None):
    """Run the CLI; returns the exit code instead of raising SystemExit."""
    try:
        cli.main(args=argv, prog_name="qseries", standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 2
    except ConfigError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        return 2
    except NumericError as exc:
        click.echo(f"numeric failure: {exc}", err=True)
        return 3
    except (DataError, OSError) as exc:
        click.echo(f"data error: {exc}", err=True)
        return 4
    except click.ClickException as exc:
        exc.show()
        return 1


def entrypoint():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
