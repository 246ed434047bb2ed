"""
Feature extraction service: one descriptor row per PGM image in a directory.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

from config.settings import RunConfig
from core.errors import ConfigurationError, CulpritError, DataError
from core.vision import DescriptorKind, extract_features, read_pgm

from .artifacts import ArtifactWriter
from .stages import EXTRACT, WRITE_ARTIFACTS, stage

LBP_WIDTH = 256
IMAGE_SUFFIXES = (".pgm",)
FEATURES_NAME = "features.csv"


@dataclass
class ExtractSummary:
    descriptor: str
    rows: int = 0
    skipped: int = 0
    skipped_files: List[str] = field(default_factory=list)
    output: Path = None

    def to_dict(self):
        return {
            "descriptor": self.descriptor,
            "rows": self.rows,
            "skipped": self.skipped,
            "skipped_files": list(self.skipped_files),
        }


class FeatureService:
    def __init__(self, config: RunConfig):
        self.logger = logging.getLogger(__name__)
        self.config = config

    def list_images(self, image_dir: Path) -> List[Path]:
        if not image_dir.is_dir():
            raise DataError(f"Image directory not found: {image_dir}")
        return sorted(
            (p for p in image_dir.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES),
            key=lambda p: p.name,
        )

    def run(self) -> ExtractSummary:
        config = self.config
        if not config.image_dir:
            raise ConfigurationError("extract-features needs image_dir", stage=EXTRACT)
        descriptor = DescriptorKind(config.descriptor.upper())
        if descriptor not in (DescriptorKind.LBP, DescriptorKind.HOG):
            raise ConfigurationError(f"extract-features supports LBP and HOG, got {descriptor.value}", stage=EXTRACT)
        summary = ExtractSummary(descriptor.value)

        rows, width = [], LBP_WIDTH if descriptor is DescriptorKind.LBP else None
        with stage(EXTRACT):
            for path in self.list_images(Path(config.image_dir)):
                try:
                    vector = extract_features(
                        read_pgm(path), descriptor, config.normalization,
                        cell_size=config.cell_size, n_bins=config.n_bins,
                    )
                    if width is not None and len(vector) != width:
                        raise DataError(f"{path.name} yields {len(vector)} values, earlier images yield {width}")
                except CulpritError as e:
                    self.logger.warning(f"Skipping {path.name}: {e}")
                    summary.skipped += 1
                    summary.skipped_files.append(path.name)
                    continue
                width = len(vector)
                rows.append([path.stem, descriptor.value, *vector.values.tolist()])
        summary.rows = len(rows)

        with stage(WRITE_ARTIFACTS):
            writer = ArtifactWriter(config.output_dir)
            header = ["image_id", "descriptor_kind"] + [f"v{j}" for j in range(width or 0)]
            summary.output = writer.write_csv(FEATURES_NAME, header, rows)
            writer.write_yaml("extract_summary.yaml", summary.to_dict())
            writer.write_manifest({"command": "extract-features", "image_dir": str(config.image_dir)})
        self.logger.info(f"Extracted {summary.rows} {descriptor.value} descriptors, skipped {summary.skipped}")
        return summary


def run_extract_command(config: RunConfig) -> ExtractSummary:
    return FeatureService(config).run()
