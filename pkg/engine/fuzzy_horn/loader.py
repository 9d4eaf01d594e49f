"""
Theory Loader - load theories, structures, algebra tables and maps from a pack

Pack layout:
    theories/    *.horn text files (surface syntax)
    structures/  *.structure.yaml
    algebras/    *.algebra.yaml operation tables
    maps/        *.map.yaml structure maps
    tests/fixtures/  golden files
"""

import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

import yaml

from .algebra import MtlAlgebra, TableAlgebra, check_residuation, format_truth, get_algebra
from .errors import AlgebraError, HornEngineError, MorphismError, StructureError
from .herbrand import HStructure
from .morphisms import AlgebraMap, StructureMap
from .parser import Theory, parse_theory
from .saturation import SaturationResult
from .semantics import FuzzyStructure
from .syntax import EQUALITY, Signature, format_formula

_logger = logging.getLogger(__name__)


class TheoryLoader:
    """Load and cache pack artefacts"""

    def __init__(self, pack_path: Optional[Union[str, Path]] = None):
        """
        Initialize theory loader

        Args:
            pack_path: Path to a pack directory (e.g., 'packs/worked/');
                names that are existing paths are read directly
        """
        self.pack_path = Path(pack_path) if pack_path else None
        base = self.pack_path or Path(".")
        self.theories_dir = base / "theories"
        self.structures_dir = base / "structures"
        self.algebras_dir = base / "algebras"
        self.maps_dir = base / "maps"
        self.fixtures_dir = base / "tests" / "fixtures"

        # Cached data
        self._theories_cache: Dict[str, Theory] = {}
        self._structures_cache: Dict[Tuple[str, Optional[str]], FuzzyStructure] = {}
        self._algebras_cache: Dict[str, TableAlgebra] = {}

    def _resolve(self, name: Union[str, Path], directory: Path, label: str) -> Path:
        direct = Path(name)
        if direct.exists():
            return direct
        file_path = directory / name
        if not file_path.exists():
            raise FileNotFoundError(f"{label} file not found: {file_path}")
        return file_path

    def _read_yaml(self, file_path: Path) -> Dict[str, Any]:
        with open(file_path, "r") as f:
            data = yaml.safe_load(f)
        if not isinstance(data, dict):
            raise StructureError(f"{file_path} must hold a mapping")
        return data

    def load_theory(self, theory_file: Union[str, Path]) -> Theory:
        """
        Load a theory file

        Args:
            theory_file: file name inside theories/ or a path

        Returns:
            Parsed theory; open axioms are universally closed
        """
        key = str(theory_file)
        if key in self._theories_cache:
            return self._theories_cache[key]

        file_path = self._resolve(theory_file, self.theories_dir, "Theory")
        with open(file_path, "r", encoding="utf-8") as f:
            theory = parse_theory(f.read(), name=file_path.name)

        _logger.info(f"Loaded theory {file_path.name}: {len(theory)} formulas")
        self._theories_cache[key] = theory
        return theory

    def load_algebra_table(self, algebra_file: Union[str, Path]) -> TableAlgebra:
        """
        Load a finite algebra given by operation tables

        The tables must pass check_residuation on the whole carrier.
        """
        key = str(algebra_file)
        if key in self._algebras_cache:
            return self._algebras_cache[key]

        file_path = self._resolve(algebra_file, self.algebras_dir, "Algebra")
        data = self._read_yaml(file_path)
        algebra = algebra_from_dict(data, default_name=file_path.stem)

        self._algebras_cache[key] = algebra
        return algebra

    def _algebra(self, spec: Any, fallback: Optional[Union[str, MtlAlgebra]], near: Path) -> MtlAlgebra:
        if isinstance(spec, dict) and "table" in spec:
            sibling = near.parent / "algebras" / str(spec["table"])
            if not (self.algebras_dir / str(spec["table"])).exists() and sibling.exists():
                return self.load_algebra_table(sibling)
            return self.load_algebra_table(spec["table"])
        if isinstance(spec, str):
            return get_algebra(spec)
        if spec is None and fallback is not None:
            return get_algebra(fallback) if isinstance(fallback, str) else fallback
        raise StructureError(f"structure needs an algebra (bundled name or table), got {spec!r}")

    def load_structure(
        self,
        structure_file: Union[str, Path],
        algebra: Optional[Union[str, MtlAlgebra]] = None,
    ) -> FuzzyStructure:
        """
        Load a structure file

        Args:
            structure_file: file name inside structures/ or a path
            algebra: used when the file does not name its algebra

        Returns:
            FuzzyStructure
        """
        key = (str(structure_file), str(algebra) if algebra is not None else None)
        if key in self._structures_cache:
            return self._structures_cache[key]

        file_path = self._resolve(structure_file, self.structures_dir, "Structure")
        data = self._read_yaml(file_path)
        structure = structure_from_dict(
            data,
            algebra=self._algebra(data.get("algebra"), algebra, file_path.parent),
            default_name=file_path.name.split(".")[0],
        )

        _logger.info(f"Loaded structure {structure.name} over {structure.algebra.name} ({len(structure.domain)} elements)")
        self._structures_cache[key] = structure
        return structure

    def load_map(self, map_file: Union[str, Path], source: FuzzyStructure, target: FuzzyStructure) -> StructureMap:
        """
        Load a structure map between two loaded structures

        Keys and values of g are matched against the domains by their text.
        """
        file_path = self._resolve(map_file, self.maps_dir, "Map")
        data = self._read_yaml(file_path)
        return map_from_dict(data, source, target)

    def load_pack_meta(self) -> Dict[str, Any]:
        if self.pack_path is None:
            raise FileNotFoundError("Pack metadata not found: no pack path configured")
        file_path = self.pack_path / "pack.meta.yaml"
        if not file_path.exists():
            raise FileNotFoundError(f"Pack metadata not found: {file_path}")
        return self._read_yaml(file_path)

    def clear_cache(self):
        """Clear all cached data"""
        self._theories_cache.clear()
        self._structures_cache.clear()
        self._algebras_cache.clear()


# ---------------------------------------------------------------------------
# Dict readers
# ---------------------------------------------------------------------------


def algebra_from_dict(data: Mapping[str, Any], default_name: str = "table") -> TableAlgebra:
    try:
        algebra = TableAlgebra(
            name=str(data.get("name", default_name)),
            conj=data["conj"],
            residuum=data["residuum"],
            order=data.get("order") or list(range(int(data.get("size", len(data["conj"]))))),
            bottom=data.get("bottom"),
            top=data.get("top"),
        )
    except KeyError as exc:
        raise AlgebraError(f"algebra table {default_name} is missing {exc}") from None

    size = data.get("size")
    if size is not None and size != algebra.size:
        raise AlgebraError(f"algebra {algebra.name} declares size {size} but its tables have {algebra.size} rows")

    report = check_residuation(algebra)
    if not report:
        raise AlgebraError(f"algebra {algebra.name} is not an MTL-algebra: {report.describe()}")
    return algebra


def _infer_signature(data: Mapping[str, Any]) -> Signature:
    predicates: Dict[str, int] = {}
    functions: Dict[str, int] = {}
    for name, rows in (data.get("predicates") or {}).items():
        if name == EQUALITY:
            continue
        predicates[name] = len(rows[0]) - 1 if isinstance(rows, list) and rows else 0
    for name, rows in (data.get("functions") or {}).items():
        functions[name] = len(rows[0]) - 1 if rows else 1
    constants = list((data.get("constants") or {}).keys())
    equality = data.get("equality") is not None or EQUALITY in (data.get("predicates") or {})
    return Signature.build(predicates, functions, constants, equality=equality)


def _declared_signature(spec: Mapping[str, Any]) -> Signature:
    equality = spec.get("equality", False)
    if isinstance(equality, str):
        equality = equality.lower() == "on"
    return Signature.build(
        spec.get("predicates") or {},
        spec.get("functions") or {},
        spec.get("constants") or [],
        equality=bool(equality),
    )


def structure_from_dict(data: Mapping[str, Any], algebra: MtlAlgebra, default_name: str = "") -> FuzzyStructure:
    """
    Build a structure from the YAML schema

    Keys: algebra, signature (optional), domain, constants {c: element},
    functions {f: [[args..., result], ...]}, predicates {P: [[args..., value],
    ...] or a scalar for 0-ary}, equality (crisp, or rows under
    predicates["=="]), default (truth value of unlisted atoms).
    """
    signature = _declared_signature(data["signature"]) if data.get("signature") else _infer_signature(data)
    domain = list(data.get("domain") or [])
    if not domain:
        raise StructureError(f"structure {default_name} needs a nonempty domain")

    functions: Dict[str, Dict[tuple, Any]] = {}
    for name, element in (data.get("constants") or {}).items():
        functions[name] = {(): element}
    for name, rows in (data.get("functions") or {}).items():
        functions[name] = {tuple(row[:-1]): row[-1] for row in rows}

    predicates: Dict[str, Dict[tuple, Any]] = {}
    for name, rows in (data.get("predicates") or {}).items():
        if isinstance(rows, list):
            predicates[name] = {tuple(row[:-1]): algebra.coerce(row[-1]) for row in rows}
        else:
            predicates[name] = {(): algebra.coerce(rows)}

    equality = data.get("equality")
    if equality not in (None, "crisp"):
        raise StructureError(f"equality must be 'crisp' or given as predicate rows, got {equality!r}")

    default = data.get("default")
    try:
        return FuzzyStructure(
            signature=signature,
            algebra=algebra,
            domain=tuple(domain),
            functions=functions,
            predicates=predicates,
            default=algebra.coerce(default) if default is not None else None,
            crisp_equality=equality == "crisp",
            name=str(data.get("name", default_name)),
        )
    except HornEngineError as exc:
        raise StructureError(f"structure {data.get('name', default_name)}: {exc}") from None


def _by_text(domain) -> Dict[str, Any]:
    return {str(d): d for d in domain}


def map_from_dict(data: Mapping[str, Any], source: FuzzyStructure, target: FuzzyStructure) -> StructureMap:
    spec = data.get("f", "identity")
    if spec == "identity":
        f = AlgebraMap.identity(source.algebra)
        if source.algebra != target.algebra:
            raise MorphismError("identity algebra map needs the same algebra on both sides")
    elif spec == "embedding":
        f = AlgebraMap.boolean_embedding(source.algebra, target.algebra)
    elif isinstance(spec, dict):
        f = AlgebraMap.explicit(
            source.algebra,
            target.algebra,
            {source.algebra.coerce(a): target.algebra.coerce(b) for a, b in spec.items()},
        )
    else:
        raise MorphismError(f"f must be identity, embedding or a mapping, got {spec!r}")

    src_elements, dst_elements = _by_text(source.domain), _by_text(target.domain)
    g = {}
    for key, value in (data.get("g") or {}).items():
        if str(key) not in src_elements or str(value) not in dst_elements:
            raise MorphismError(f"g entry {key} -> {value} is outside the domains")
        g[src_elements[str(key)]] = dst_elements[str(value)]
    return StructureMap(f, g)


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------


def _text(element: Any) -> Any:
    return element if isinstance(element, (int, str)) else str(element)


def dump_structure(structure: FuzzyStructure, decimal: bool = False) -> str:
    """YAML text of a finite structure, in the schema load_structure reads"""
    algebra = structure.algebra
    signature = structure.signature
    data: Dict[str, Any] = {
        "name": structure.name or "structure",
        "algebra": algebra.name if not isinstance(algebra, TableAlgebra) else {"table": algebra.name},
        "signature": {
            "predicates": {name: arity for name, arity in signature.user_predicates},
            "functions": {name: arity for name, arity in signature.function_symbols},
            "constants": list(signature.constants),
            "equality": "on" if signature.has_equality else "off",
        },
        "domain": [_text(d) for d in structure.domain],
    }

    data["constants"] = {name: _text(structure.constant(name)) for name in signature.constants}
    functions = {}
    for name, arity in signature.function_symbols:
        table = structure.functions[name]
        if callable(table):
            raise StructureError(f"cannot write function {name} given as a callable")
        functions[name] = [[_text(a) for a in args] + [_text(value)] for args, value in table.items()]
    data["functions"] = functions

    def value_text(value):
        text = algebra.format(value, decimal)
        return int(text) if text.isdigit() else text

    predicates = {}
    for name, arity in signature.predicates:
        if name == EQUALITY and structure.crisp_equality:
            continue
        table = structure.predicates.get(name, {})
        if callable(table):
            raise StructureError(f"cannot write predicate {name} given as a callable")
        if arity == 0:
            predicates[name] = value_text(table.get((), structure.default))
        else:
            predicates[name] = [[_text(a) for a in args] + [value_text(v)] for args, v in table.items()]
    data["predicates"] = predicates
    if signature.has_equality and structure.crisp_equality:
        data["equality"] = "crisp"
    data["default"] = value_text(structure.default)
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)


def dump_classes(result: SaturationResult) -> str:
    """One line per class: id: representative, other members"""
    lines = []
    for number, members in enumerate(result.classes(), start=1):
        lines.append(f"{number}: {', '.join(str(t) for t in members)}")
    return "\n".join(lines) + "\n"


def dump_h_set(h_structure: HStructure) -> str:
    return "".join(f"{format_formula(a)}\n" for a in h_structure.sorted_atoms())


def dump_map(structure_map: StructureMap) -> str:
    f = structure_map.f
    domain = f.domain() or ()
    lines = ["f: " + (f.kind if f.kind == "identity" else ", ".join(f"{format_truth(a)}->{format_truth(f(a))}" for a in domain))]
    for element, image in structure_map.g.items():
        lines.append(f"g: {element} -> {image}")
    return "\n".join(lines) + "\n"
