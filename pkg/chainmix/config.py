from __future__ import annotations

import argparse
from gettext import gettext
from typing import Any, NoReturn, Sequence

import chainmix
from chainmix.utils.settings import Settings

VERSION = chainmix.version


class ArgumentParser(argparse.ArgumentParser):
    """Exits with status 1 on bad usage (argparse's own default is 2, which means I/O failure here)"""

    def error(self, message: str) -> NoReturn:
        self.print_usage()
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_k_range(value: str) -> list[int]:
    """'2:10' -> [2, 3, ..., 10]"""
    try:
        first, last = (int(part) for part in value.split(":"))
    except ValueError:
        msg = f"invalid k range {value!r}, expected FIRST:LAST (for example 2:10)"
        raise argparse.ArgumentTypeError(msg) from None
    if first < 1 or last < first:
        msg = f"invalid k range {value!r}, need 1 <= FIRST <= LAST"
        raise argparse.ArgumentTypeError(msg)
    return list(range(first, last + 1))


def parse_alphas(value: str) -> list[float]:
    try:
        alphas = [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        msg = f"invalid alpha list {value!r}, expected comma separated numbers"
        raise argparse.ArgumentTypeError(msg) from None
    if not alphas:
        msg = "at least one alpha is required"
        raise argparse.ArgumentTypeError(msg)
    return alphas


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o", "--output-dir", required=True, help=gettext("Directory for the results (created if missing)")
    )


def _add_clustering(parser: argparse.ArgumentParser, settings: Settings, restarts: bool = True) -> None:
    if restarts:
        parser.add_argument(
            "--restarts", type=int, default=settings.restarts, help=gettext("Random restarts per k")
        )
    parser.add_argument(
        "--convergence-frac",
        type=float,
        default=settings.convergence_fraction,
        help=gettext("Stop when fewer than this fraction of sequences change chain"),
    )
    parser.add_argument(
        "--max-iters", type=int, default=settings.max_iterations, help=gettext("Iteration cap per restart")
    )
    parser.add_argument(
        "--smoothing",
        type=float,
        default=settings.smoothing,
        help=gettext("Pseudo-count added to every allowed edge when re-estimating chains"),
    )
    parser.add_argument("--seed", type=int, default=settings.seed, help=gettext("Random seed"))


def get_options(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Command line options. Defaults come from the user's settings file."""
    settings = Settings.load()
    parser = ArgumentParser(
        "chainmix",
        description=gettext("Cluster sessions of learning activity into a mixture of Markov chains."),
    )
    parser.add_argument("-v", "--verbose", action="store_true", help=gettext("Show debug log messages"))
    parser.add_argument(
        "--version", action="version", help=gettext("Show version number and exit"), version=f"chainmix {VERSION}"
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sessionize = commands.add_parser("sessionize", help=gettext("Split an event log into encoded sessions"))
    sessionize.add_argument("input", help=gettext("CSV event log"))
    _add_output(sessionize)
    sessionize.add_argument(
        "--gap-minutes",
        type=float,
        default=settings.gap_minutes,
        help=gettext("Inactivity that ends a session, in minutes"),
    )
    sessionize.add_argument("--has-header", action="store_true", help=gettext("The first line is a header"))

    cluster = commands.add_parser("cluster", help=gettext("Fit a mixture of Markov chains"))
    cluster.add_argument("sessions", help=gettext("Session file (JSON lines)"))
    _add_output(cluster)
    k_choice = cluster.add_mutually_exclusive_group(required=True)
    k_choice.add_argument("--k", type=int, help=gettext("Number of chains"))
    k_choice.add_argument(
        "--k-range", type=parse_k_range, help=gettext("Fit every k in FIRST:LAST and write the sweep table")
    )
    _add_clustering(cluster, settings)
    cluster.add_argument("--init-model", help=gettext("Start from the chains of an existing model file"))

    synth = commands.add_parser("synth", help=gettext("Run the noisy prior experiment on synthetic data"))
    _add_output(synth)
    synth.add_argument("--k-true", type=int, default=settings.k_true, help=gettext("Number of generator chains"))
    synth.add_argument("--n", type=int, default=settings.n_sequences, help=gettext("Sequences per corpus"))
    synth.add_argument(
        "--end-prob",
        type=float,
        default=settings.end_probability,
        help=gettext("Probability of ending the session after every action"),
    )
    synth.add_argument(
        "--alphas",
        type=parse_alphas,
        default=[0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
        help=gettext("Comma separated noise levels in [0, 1]"),
    )
    synth.add_argument("--reps", type=int, default=settings.repetitions, help=gettext("Repetitions per alpha"))
    synth.add_argument(
        "--workers", type=int, default=settings.workers, help=gettext("Threads used for the (alpha, rep) cells")
    )
    _add_clustering(synth, settings, restarts=False)

    evaluate = commands.add_parser("eval", help=gettext("Evaluate a model against sessions"))
    evaluate.add_argument("model", help=gettext("Model file"))
    evaluate.add_argument("sessions", help=gettext("Session file (JSON lines)"))
    _add_output(evaluate)
    evaluate.add_argument("--truth", help=gettext("CSV with session_id and true labels, to report purity"))
    evaluate.add_argument("--truth-column", default="label", help=gettext("Column of --truth holding the labels"))
    evaluate.add_argument("--profiles", action="store_true", help=gettext("Write per-student chain distributions"))
    evaluate.add_argument(
        "--permutation-baseline",
        action="store_true",
        help=gettext("Compare fits on the sessions with fits on copies with shuffled actions"),
    )
    evaluate.add_argument(
        "--k-range", type=parse_k_range, help=gettext("k values for the permutation baseline (default: model k)")
    )
    _add_clustering(evaluate, settings)

    export_dot = commands.add_parser("export-dot", help=gettext("Write every chain of a model as a DOT graph"))
    export_dot.add_argument("model", help=gettext("Model file"))
    _add_output(export_dot)
    export_dot.add_argument(
        "--coverage",
        type=float,
        default=settings.coverage,
        help=gettext("Draw the most likely edges of every state until this much probability is covered"),
    )

    return parser.parse_args(argv)


def flags_of(options: argparse.Namespace) -> dict[str, Any]:
    """Resolved flags of a run, as recorded in its manifest"""
    return {key: value for key, value in sorted(vars(options).items()) if not callable(value)}
