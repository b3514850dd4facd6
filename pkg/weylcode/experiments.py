#
#   This program is free software: you can redistribute it and/or modify
#   it under the terms of the GNU General Public License as published by
#   the Free Software Foundation, either version 3 of the License, or
#   (at your option) any later version.
#
#   This program is distributed in the hope that it will be useful,
#   but WITHOUT ANY WARRANTY; without even the implied warranty of
#   MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#   GNU General Public License for more details.
#
#   You should have received a copy of the GNU General Public License
#   along with this file. If not, see <http://www.gnu.org/licenses/>.
#
#   Copyright © 2024 The weylcode developers
#
"""Seeded experiments on the encoding, with CSV and JSON reports.

Every trial draws from its own generator, made from (seed, trial), so a
report depends only on its name, seed and parameters.
"""

import csv
import datetime
import itertools
import json
import logging
import math
import os
import statistics
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from weylcode import rsk, triangular, util
from weylcode._version import VERSION
from weylcode.prefix import RealPrefix

LOGGER = logging.getLogger(__name__)

SIGNIFICANCE_FLOOR = 0.001
CORNER = 3
RECONSTRUCTED_COORDINATES = 10
PAIRS_TESTED = 10
COLUMNS = ["name", "seed", "trial", "n", "statistic", "value", "params"]


def _params_text(params):
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def report_timestamp():
    """Return the report time, fixed by SOURCE_DATE_EPOCH when it is set."""
    epoch = os.getenv("SOURCE_DATE_EPOCH", "")
    if epoch.strip():
        moment = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    else:
        moment = datetime.datetime.now(tz=datetime.timezone.utc)
    return moment.replace(microsecond=0).isoformat()


@dataclass(frozen=True)
class ReportRow:
    statistic: str
    value: float
    n: int = None
    trial: int = None
    extra: dict = field(default_factory=dict)


@dataclass
class ExperimentReport:
    """Rows of statistics from one seeded run.

    Attributes:
        name (str): the experiment.
        seed (int): the seed every trial generator is made from.
        params (dict): the run parameters.
        rows (list[ReportRow]): the statistics, in a fixed order.
        metadata (dict): code version and anything the reader needs.
    """

    name: str
    seed: int
    params: dict
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, statistic, value, n=None, trial=None, **extra):
        value = None if value is None else float(value)
        self.rows.append(ReportRow(statistic, value, n, trial, extra))

    def select(self, statistic, trial=False):
        """Return the rows of one statistic.

        Args:
            statistic (str): the statistic.
            trial (bool): only per-trial rows if True, only aggregates
                if None, all rows if False.
        """
        return [
            row
            for row in self.rows
            if row.statistic == statistic
            and (
                trial is False
                or (trial is None and row.trial is None)
                or (trial is True and row.trial is not None)
            )
        ]

    def records(self):
        for row in self.rows:
            yield {
                "name": self.name,
                "seed": self.seed,
                "trial": row.trial,
                "n": row.n,
                "statistic": row.statistic,
                "value": row.value,
                "params": {**self.params, **row.extra},
            }

    def write_csv(self, stream):
        writer = csv.DictWriter(stream, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for record in self.records():
            record["params"] = _params_text(record["params"])
            writer.writerow(record)

    def to_json(self):
        document = {
            "name": self.name,
            "seed": self.seed,
            "params": self.params,
            "version": VERSION,
            "timestamp": report_timestamp(),
            **self.metadata,
            "rows": list(self.records()),
        }
        return json.dumps(document, indent=2, sort_keys=False) + "\n"

    def write(self, directory):
        """Write <name>-<seed>.csv and <name>-<seed>.json into directory.

        Returns:
            (tuple[str, str]): the two paths.
        """
        os.makedirs(directory, exist_ok=True)
        stem = os.path.join(directory, f"{self.name}-{self.seed}")
        with open(f"{stem}.csv", "w", encoding="utf-8", newline="") as stream:
            self.write_csv(stream)
        with open(f"{stem}.json", "w", encoding="utf-8") as stream:
            stream.write(self.to_json())
        LOGGER.info("Wrote %s.csv and %s.json", stem, stem)
        return f"{stem}.csv", f"{stem}.json"


def _distinguishability_trial(trial, big_n, seed):
    rng = util.trial_rng(seed, trial)
    x = rng.random(big_n)
    y = rng.random(big_n)
    errors = {}
    for n in (big_n // 10, big_n // 2, big_n):
        m = min(RECONSTRUCTED_COORDINATES, n)
        code = triangular.encode_prefix(RealPrefix(tuple(x[:n])))
        estimates = triangular.reconstruct_prefix(code, m)
        errors[n] = float(np.max(np.abs(np.asarray(estimates) - x[:m])))
    separation = triangular.first_difference(
        triangular.encode_prefix(RealPrefix(tuple(x))),
        triangular.encode_prefix(RealPrefix(tuple(y))),
    )
    LOGGER.debug("trial %d: errors %s, separated at %s", trial, errors, separation)
    return errors, separation


def run_distinguishability(big_n, trials, seed, max_workers=1):
    """Measure how well long codes pin down points.

    Per trial the first coordinates of x are reconstructed from the code
    of x_1..x_n at n = N/10, N/2, N, and the codes of x and an independent
    y are compared for the first n where they differ.
    """
    if big_n < 10 or trials < 1:
        raise util.BadParamsError("distinguishability needs N >= 10 and trials >= 1")
    report = ExperimentReport(
        "distinguishability", seed, {"N": big_n, "trials": trials}
    )
    results = util.run_trials(
        _distinguishability_trial, trials, max_workers, big_n, seed
    )
    for trial, (errors, separation) in enumerate(results):
        for n, error in errors.items():
            report.add("reconstruction_error", error, n=n, trial=trial)
        report.add("separation_n", separation or 0, n=big_n, trial=trial)

    for n in results[0][0]:
        report.add(
            "median_reconstruction_error",
            statistics.median(errors[n] for errors, _ in results),
            n=n,
        )
    report.add(
        "separated_fraction",
        sum(separation is not None for _, separation in results) / trials,
        n=big_n,
    )
    return report


def _contingency(first, second, first_size, second_size):
    table = np.zeros((first_size, second_size), dtype=np.int64)
    np.add.at(table, (first - 1, second - 1), 1)
    table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]
    if min(table.shape) < 2:
        return 0.0, 1.0
    result = stats.chi2_contingency(table, correction=False)
    return float(result[0]), float(result[1])


def run_uniformity(n, samples, seed, codes=None):
    """Test that encoded uniform samples are distributed as μ.

    Each coordinate t_i, i >= 2, gets a chi-square goodness-of-fit test
    against the uniform law on {1..i}; up to ten random coordinate pairs
    get a chi-square independence test.

    Args:
        n (int): code length.
        samples (int): number of encoded prefixes.
        seed (int): the seed.
        codes (numpy.ndarray): test these codes instead of encoded samples.
    """
    if n < 2 or samples < 1:
        raise util.BadParamsError("uniformity needs n >= 2 and samples >= 1")
    rng = np.random.default_rng(seed)
    if codes is None:
        codes = triangular.encode_matrix(rng.random((samples, n)))
    else:
        codes = np.asarray(codes, dtype=np.int64)
        if codes.shape != (samples, n):
            raise util.BadParamsError(f"Expected codes of shape {(samples, n)}")

    report = ExperimentReport(
        "uniformity",
        seed,
        {"n": n, "samples": samples},
        metadata={"significance_floor": SIGNIFICANCE_FLOOR},
    )
    p_values = []
    for i in range(2, n + 1):
        observed = np.bincount(codes[:, i - 1] - 1, minlength=i)
        result = stats.chisquare(observed)
        p_values.append(float(result.pvalue))
        report.add("coordinate_chi2", result.statistic, n=i)
        report.add("coordinate_p_value", result.pvalue, n=i)

    candidates = list(itertools.combinations(range(2, n + 1), 2))
    chosen = []
    if candidates:
        size = min(PAIRS_TESTED, len(candidates))
        chosen = sorted(rng.choice(len(candidates), size=size, replace=False))
    pair_p_values = []
    for index in chosen:
        i, j = candidates[index]
        statistic, p_value = _contingency(codes[:, i - 1], codes[:, j - 1], i, j)
        pair_p_values.append(p_value)
        report.add("pair_chi2", statistic, n=j, i=i, j=j)
        report.add("pair_p_value", p_value, n=j, i=i, j=j)

    report.add("min_coordinate_p_value", min(p_values), n=n)
    if pair_p_values:
        report.add("min_pair_p_value", min(pair_p_values), n=n)
    LOGGER.info("uniformity: smallest coordinate p-value %g", min(p_values))
    return report


def log_factorials(n_max):
    """Return ln(n!) for n = 0..n_max by compensated summation of logs."""
    values = [0.0]
    total, compensation = 0.0, 0.0
    for n in range(1, n_max + 1):
        term = math.log(n)
        running = total + term
        if abs(total) >= abs(term):
            compensation += (total - running) + term
        else:
            compensation += (term - running) + total
        total = running
        values.append(total + compensation)
    return values


def theta_entropy(n):
    """Return H(θ_n), the entropy of the Plancherel shape of size n.

    A block of θ_n is a recording tableau; under Lebesgue measure each of
    the f_λ tableaux of shape λ has probability f_λ / n!.
    """
    log_total = math.lgamma(n + 1)
    entropy = 0.0
    for shape in rsk.partitions(n):
        count = rsk.hook_length_count(shape)
        entropy += count**2 / math.factorial(n) * (log_total - math.log(count))
    return entropy


def run_entropy_curve(n_max, theta_max=20, seed=0):
    """Tabulate H(η_n)/n = ln(n!)/n, and H(θ_n)/n for small n."""
    if n_max < 2:
        raise util.BadParamsError("entropy needs n_max >= 2")
    report = ExperimentReport(
        "entropy", seed, {"n_max": n_max, "theta_max": theta_max}
    )
    for n, log_factorial in enumerate(log_factorials(n_max)[1:], start=1):
        report.add("weyl_entropy_rate", log_factorial / n, n=n)
    for n in range(1, min(theta_max, n_max) + 1):
        report.add("theta_entropy_rate", theta_entropy(n) / n, n=n)
    return report


def separation_grid(big_n):
    """Return 1, 2, 5, 10, 20, 50, … up to N, with N itself."""
    grid = []
    scale = 1
    while scale <= big_n:
        grid.extend(step * scale for step in (1, 2, 5) if step * scale <= big_n)
        scale *= 10
    if grid[-1] != big_n:
        grid.append(big_n)
    return grid


def _rsk_separation_trial(trial, big_n, seed):
    rng = util.trial_rng(seed, trial)
    x = RealPrefix(tuple(rng.random(big_n)))
    y = RealPrefix(tuple(rng.random(big_n)))
    separation = rsk.q_separation(x, y)
    d = triangular.special_positions(triangular.encode_prefix(x)).d
    errors = {n: abs(d[n - 1] / n - x.values[0]) for n in separation_grid(big_n)}
    return separation, errors


def run_rsk_separation(big_n, pairs, seed, max_workers=1):
    """Measure how fast the recording tableaux tell two points apart.

    Reports per pair the first n where Q(x_1..x_n) and Q(y_1..y_n) differ,
    the fraction of pairs separated by each n, and the error of d_n/n as
    an estimate of x_1 along a logarithmic grid.
    """
    if big_n < 2 or pairs < 1:
        raise util.BadParamsError("rsk-separation needs N >= 2 and pairs >= 1")
    report = ExperimentReport("rsk-separation", seed, {"N": big_n, "pairs": pairs})
    results = util.run_trials(_rsk_separation_trial, pairs, max_workers, big_n, seed)

    separations = []
    for trial, (separation, errors) in enumerate(results):
        separations.append(separation or big_n + 1)
        report.add("q_separation_n", separation or 0, n=big_n, trial=trial)
        for n, error in errors.items():
            report.add("first_coord_error", error, n=n, trial=trial)

    separations = np.sort(separations)
    for n in range(1, big_n + 1):
        separated = np.searchsorted(separations, n, side="right")
        report.add("separated_fraction", separated / pairs, n=n)
    for n in results[0][1]:
        report.add(
            "mean_first_coord_error",
            statistics.fmean(errors[n] for _, errors in results),
            n=n,
        )
    return report


def _sup_difference(first, second):
    common = first.keys() & second.keys()
    return max(abs(first[cell] - second[cell]) for cell in common)


def corner_drift(x: RealPrefix, n):
    """Compare the top-left corners of the P-tableaux of x_1..x_n and x_1..x_2n.

    Args:
        x (RealPrefix): a word of length at least 2n.
        n (int): the shorter prefix length.

    Returns:
        (dict): sup-differences on the common corner cells of the
            normalized entries ("normalized"), the raw entries ("raw") and
            the ranks, normalized entries times the prefix length
            ("rescaled").
    """
    if n < 1 or len(x) < 2 * n:
        raise util.BadRangeError(f"corner drift at {n} needs {2 * n} values")
    insertion = rsk.RowInsertion()
    corners = {}
    for length, value in enumerate(x.values[: 2 * n], start=1):
        insertion.insert(value)
        if length in (n, 2 * n):
            raw = insertion.corner(CORNER)
            ordered = np.sort(x.values[:length])
            ranks = {
                cell: int(np.searchsorted(ordered, value)) + 1
                for cell, value in raw.items()
            }
            corners[length] = (raw, ranks)

    (raw_n, ranks_n), (raw_2n, ranks_2n) = corners[n], corners[2 * n]
    return {
        "normalized": _sup_difference(
            {cell: rank / n for cell, rank in ranks_n.items()},
            {cell: rank / (2 * n) for cell, rank in ranks_2n.items()},
        ),
        "raw": _sup_difference(raw_n, raw_2n),
        "rescaled": _sup_difference(ranks_n, ranks_2n),
    }


def _p_stabilization_trial(trial, big_n, seed):
    x = RealPrefix(tuple(util.trial_rng(seed, trial).random(big_n)))
    return {n: corner_drift(x, n) for n in (big_n // 4, big_n // 2)}


def run_p_stabilization(big_n, trials, seed, max_workers=1):
    """Measure the drift of the P-tableau corner between n and 2n.

    Normalized entries settle while their ranks (the rescaled entries)
    keep moving. For uniform letters the raw corner entries settle at the
    same rate as the normalized ones.
    """
    if big_n < 20 or trials < 1:
        raise util.BadParamsError("p-stabilization needs N >= 20 and trials >= 1")
    report = ExperimentReport(
        "p-stabilization", seed, {"N": big_n, "trials": trials, "corner": CORNER}
    )
    results = util.run_trials(_p_stabilization_trial, trials, max_workers, big_n, seed)
    for trial, drifts in enumerate(results):
        for n, drift in drifts.items():
            for kind, value in drift.items():
                report.add(f"{kind}_corner_drift", value, n=n, trial=trial)
    for n in results[0]:
        for kind in ("normalized", "raw", "rescaled"):
            report.add(
                f"mean_{kind}_corner_drift",
                statistics.fmean(drifts[n][kind] for drifts in results),
                n=n,
            )
    return report
