#!/usr/bin/env python3
"""
Generate JSON Schema files for the wire records and experiment configs.
"""
import json
import sys
from pathlib import Path

sys.path.insert(0, "packages/data-contracts/python/src")

from clusterlab_contracts import configs, records  # noqa: E402

MODELS = {
    "records": [
        records.MomentTableRecord,
        records.ClusterReportRecord,
        records.DistributionRecord,
        records.StatSummaryRow,
        records.SimulateRecord,
        records.ShamirStepRecord,
        records.ShamirSummaryRecord,
        records.FactorReportRecord,
        records.VerifySummaryRecord,
    ],
    "configs": [
        configs.MomentsConfig,
        configs.ExactDistConfig,
        configs.SimulateConfig,
        configs.FactorsConfig,
        configs.ShamirConfig,
        configs.VerifyConfig,
    ],
}


def generate_schema_file(model_class, output_dir: Path) -> Path:
    """Generate JSON schema for a Pydantic model."""
    schema = model_class.model_json_schema(by_alias=True)
    output_file = output_dir / f"{model_class.__name__}.json"
    with open(output_file, "w", encoding="utf-8") as f:
        json.dump(schema, f, indent=2, sort_keys=True)
    print(f"Generated schema: {output_file}")
    return output_file


def main():
    output_dir = Path("packages/data-contracts/schemas")
    output_dir.mkdir(parents=True, exist_ok=True)
    generated = []
    for models in MODELS.values():
        generated.extend(generate_schema_file(m, output_dir) for m in models)

    index_file = output_dir / "index.json"
    with open(index_file, "w", encoding="utf-8") as f:
        json.dump(
            {
                "schemas": [p.name for p in generated],
                "models": {k: [m.__name__ for m in v] for k, v in MODELS.items()},
            },
            f,
            indent=2,
        )
    print(f"\nGenerated {len(generated)} schema files and {index_file}")


if __name__ == "__main__":
    main()
