#!/usr/bin/env python3
"""
Check script for the Fuzzy Horn Engine worked pack
Evaluates the golden formula dataset and validates every printed value exactly
"""

import csv
import sys
from pathlib import Path
from typing import Dict, List

# Add engine to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.fuzzy_horn import TheoryLoader, parse_formula  # noqa: E402
from engine.fuzzy_horn.algebra import format_truth  # noqa: E402
from engine.fuzzy_horn.semantics import Value, eval_sentence  # noqa: E402


def load_cases(csv_file: Path) -> List[Dict[str, str]]:
    """Load (structure, formula, expected) rows from CSV"""
    with open(csv_file, "r", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def evaluate_cases(pack_path: Path, cases: List[Dict[str, str]]) -> List[Dict[str, str]]:
    """
    Evaluate every case in its structure

    Args:
        pack_path: Path to the pack (e.g., 'packs/worked/')
        cases: rows of the golden CSV

    Returns:
        The rows with an added 'computed' column
    """
    loader = TheoryLoader(pack_path)
    results = []

    for case in cases:
        structure = loader.load_structure(case["structure"])
        phi = parse_formula(case["formula"], structure.signature)
        outcome = eval_sentence(structure, phi)
        computed = format_truth(outcome.value) if isinstance(outcome, Value) else str(outcome)
        results.append({**case, "computed": computed})

    return results


def validate_results(results: List[Dict[str, str]]) -> bool:
    """Compare computed and expected values as exact strings"""
    all_passed = True

    print("\n" + "=" * 80)
    print("VALIDATION RESULTS")
    print("=" * 80)

    for row in results:
        label = f"{row['structure']}: {row['formula']}"
        if row["computed"] == row["expected"]:
            print(f"✅ {label} = {row['computed']}")
        else:
            print(f"❌ {label} = {row['computed']} (expected: {row['expected']})")
            all_passed = False

    return all_passed


def main(pack_path: Path = None) -> int:
    """Main check execution"""
    print("=" * 80)
    print("Fuzzy Horn Engine Worked Pack Check")
    print("=" * 80)

    pack_path = pack_path or Path(__file__).parent.parent / "packs" / "worked"
    fixtures_path = pack_path / "tests" / "fixtures"

    print("\n📂 Loading golden cases...")
    cases = load_cases(fixtures_path / "eval_golden.csv")
    print(f"✅ Loaded {len(cases)} cases")

    print("\n⚙️  Evaluating formulas...")
    results = evaluate_cases(pack_path, cases)
    validation_passed = validate_results(results)

    print("\n" + "=" * 80)
    if validation_passed:
        print("✅ ALL VALIDATIONS PASSED")
        print("=" * 80)
        return 0
    else:
        print("❌ SOME VALIDATIONS FAILED")
        print("=" * 80)
        return 1


if __name__ == "__main__":
    sys.exit(main())
