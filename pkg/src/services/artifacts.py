"""
Artifact writer for a run's output directory.

All files of a run go through one ArtifactWriter. Reproducible artifacts and
quarantined ones (wall-clock timings, timestamps) are tracked separately and
listed in manifest.json, which is itself quarantined.
"""

import json
import logging
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import yaml

from core.data import write_csv_rows
from core.evaluation import MetricsReport, TimingLedger
from core.rl import TrainingHistory

PLOT_METRICS = {
    "accuracy": "accuracy",
    "precision": "macro_precision",
    "recall": "macro_recall",
    "f_measure": "macro_f1",
}


class ArtifactWriter:
    """Single writer for one output directory."""

    def __init__(self, output_dir: Union[str, Path]):
        self.logger = logging.getLogger(__name__)
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.reproducible: List[str] = []
        self.quarantined: List[str] = []
        self.started_at = datetime.now(timezone.utc).isoformat()
        self._lock = threading.Lock()

    def path(self, name: str) -> Path:
        return self.output_dir / name

    def _track(self, name: str, quarantined: bool) -> Path:
        bucket = self.quarantined if quarantined else self.reproducible
        if name not in bucket:
            bucket.append(name)
        return self.path(name)

    def register(self, name: str, quarantined: bool = False) -> Path:
        """Claim a file written by another component (e.g. a checkpoint)."""
        with self._lock:
            return self._track(name, quarantined)

    def write_yaml(self, name: str, payload: Dict[str, Any], quarantined: bool = False) -> Path:
        with self._lock:
            path = self._track(name, quarantined)
            with open(path, "w", encoding="utf-8") as f:
                yaml.safe_dump(payload, f, sort_keys=False, default_flow_style=False)
        self.logger.info(f"Wrote {path}")
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]],
                  quarantined: bool = False) -> Path:
        with self._lock:
            path = write_csv_rows(self._track(name, quarantined), header, rows)
        self.logger.info(f"Wrote {path}")
        return path

    def write_report(self, name: str, report: MetricsReport) -> Path:
        return self.write_yaml(name, report.to_dict())

    def write_history(self, history: TrainingHistory) -> None:
        with self._lock:
            history.to_csv(self._track("history.csv", False), include_timing=False)
            history.to_csv(self._track("history_timing.csv", True), include_timing=True)
        self.write_csv(
            "plot_efficiency.csv",
            ["episode", "wall_ms"],
            [(r.episode, r.wall_ms) for r in history.episodes],
            quarantined=True,
        )

    def write_metric_plots(self, reports: Sequence, prefix: str = "plot") -> None:
        """One CSV per metric with x = episode and y = the metric value."""
        for label, attribute in PLOT_METRICS.items():
            self.write_csv(
                f"{prefix}_{label}.csv",
                ["episode", label],
                [(episode, float(getattr(report, attribute))) for episode, report in reports],
            )

    def write_timings(self, ledger: TimingLedger, name: str = "timings.csv") -> Path:
        rows = [(r.phase.value, float(r.wall_milliseconds), r.count) for r in ledger.records()]
        return self.write_csv(name, ["phase", "wall_milliseconds", "count"], rows, quarantined=True)

    def write_manifest(self, extra: Dict[str, Any] = None) -> Path:
        with self._lock:
            path = self._track("manifest.json", True)
            manifest = {
                "started_at": self.started_at,
                "finished_at": datetime.now(timezone.utc).isoformat(),
                "reproducible": list(self.reproducible),
                "quarantined": list(self.quarantined),
                **(extra or {}),
            }
            with open(path, "w", encoding="utf-8") as f:
                json.dump(manifest, f, indent=2)
                f.write("\n")
        return path
