"""Reader and writer for the CoreSBML-style XML subset.

Accepted: species, parameters, compartments (as positive symbolic constants
unless sized), reactions with species references and a MathML kinetic law
built from plus/minus/times/divide/power, ``ci`` and ``cn``.  Everything
else that changes the meaning of the model is rejected with a diagnostic
naming the construct; pure metadata (notes, annotations, units) is skipped.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from fractions import Fraction
from typing import Callable

from ..errors import InputError, ParseError, UnsupportedConstruct
from ..network import RateConstant, Reaction, ReactionNetwork, validate
from ..signs import Op
from ..terms import BinOp, Const, Term, Var, format_number, neg

SBML_NS = "http://www.sbml.org/sbml/level3/version2/core"
MATHML_NS = "http://www.w3.org/1998/Math/MathML"

_METADATA = {"notes", "annotation", "listOfUnitDefinitions"}
_REJECT = {
    "listOfEvents": "event",
    "event": "event",
    "listOfFunctionDefinitions": "apply",
    "listOfRules": "rule",
    "assignmentRule": "assignment rule",
    "rateRule": "rate rule",
    "algebraicRule": "algebraic rule",
    "listOfInitialAssignments": "initial assignment",
    "listOfConstraints": "constraint",
}


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _children(el: ET.Element, name: str) -> list[ET.Element]:
    return [c for c in el if _local(c.tag) == name]


def _child(el: ET.Element, name: str) -> ET.Element | None:
    found = _children(el, name)
    return found[0] if found else None


def _items(el: ET.Element, holder: str, name: str) -> list[ET.Element]:
    h = _child(el, holder)
    return [] if h is None else _children(h, name)


def _true(value: str | None) -> bool:
    return (value or "").strip().lower() in ("true", "1")


def parse_coresbml(doc: str | bytes) -> ReactionNetwork:
    try:
        root = ET.fromstring(doc)
    except ET.ParseError as exc:
        line, col = exc.position
        raise ParseError(f"malformed XML: {exc}", line, col + 1) from None
    if _local(root.tag) != "sbml":
        raise InputError("root element must be <sbml>")
    model = _child(root, "model")
    if model is None:
        raise InputError("missing <model> element")
    for child in model:
        tag = _local(child.tag)
        if tag in _REJECT:
            raise UnsupportedConstruct(_REJECT[tag])
        if tag not in _METADATA | {
            "listOfSpecies",
            "listOfParameters",
            "listOfReactions",
            "listOfCompartments",
        }:
            raise UnsupportedConstruct(tag)
    # piecewise/delay may hide anywhere; report them before anything else
    for el in model.iter():
        tag = _local(el.tag)
        if tag == "piecewise":
            raise UnsupportedConstruct("piecewise")
        if tag == "csymbol" and "delay" in el.get("definitionURL", ""):
            raise UnsupportedConstruct("delay")

    species: list[str] = []
    for sp in _items(model, "listOfSpecies", "species"):
        sid = sp.get("id")
        if not sid:
            raise InputError("species without id")
        if _true(sp.get("boundaryCondition")) or _true(sp.get("constant")):
            raise UnsupportedConstruct(f"boundary species {sid}")
        species.append(sid)

    constants: dict[str, RateConstant] = {}
    for comp in _items(model, "listOfCompartments", "compartment"):
        cid = comp.get("id")
        size = comp.get("size")
        constants[cid] = RateConstant(cid, _number(size) if size is not None else None)
    for p in _items(model, "listOfParameters", "parameter"):
        pid = p.get("id")
        value = p.get("value")
        constants[pid] = RateConstant(pid, _number(value) if value is not None else None)

    reactions = []
    for r in _items(model, "listOfReactions", "reaction"):
        reactions.append(_reaction(r, species, constants))

    rn = ReactionNetwork(
        tuple(species),
        tuple(constants.values()),
        tuple(reactions),
        name=model.get("id") or model.get("name") or "",
    )
    diags = validate(rn)
    if diags:
        raise InputError(diags[0])
    return rn


def _number(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}") from None


def _pool(el: ET.Element | None) -> tuple[tuple[str, Fraction], ...]:
    if el is None:
        return ()
    items: dict[str, Fraction] = {}
    for ref in _children(el, "speciesReference"):
        sid = ref.get("species")
        stoich = _number(ref.get("stoichiometry", "1"))
        items[sid] = items.get(sid, Fraction(0)) + stoich
    return tuple(items.items())


def _reaction(r: ET.Element, species: list[str], constants: dict[str, RateConstant]) -> Reaction:
    rid = r.get("id")
    if not rid:
        raise InputError("reaction without id")
    reactants = _pool(_child(r, "listOfReactants"))
    products = _pool(_child(r, "listOfProducts"))
    law = _child(r, "kineticLaw")
    if law is None:
        raise InputError(f"reaction {rid} has no kinetic law")
    local: dict[str, RateConstant] = {}
    for lst in ("listOfLocalParameters", "listOfParameters"):
        holder = _child(law, lst)
        if holder is None:
            continue
        for p in holder:
            pid = p.get("id")
            value = p.get("value")
            local[pid] = RateConstant(f"{rid}_{pid}", _number(value) if value is not None else None)
    for k in local.values():
        if k.name in constants:
            raise InputError(f"local parameter name {k.name} clashes with a global one")
        constants[k.name] = k

    def resolve(name: str) -> Term:
        if name in local:
            return local[name].as_const()
        if name in species:
            return Var(name)
        if name in constants:
            return constants[name].as_const()
        raise InputError(f"undeclared symbol {name} in kinetics of {rid}")

    math = _child(law, "math")
    if math is None or len(math) != 1:
        raise InputError(f"reaction {rid}: kinetic law needs exactly one math expression")
    return Reaction(rid, reactants, _mathml(math[0], resolve), products)


_NARY = {"plus": Op.ADD, "times": Op.MUL}


def _mathml(el: ET.Element, resolve: Callable[[str], Term]) -> Term:
    tag = _local(el.tag)
    if tag == "ci":
        return resolve((el.text or "").strip())
    if tag == "cn":
        return Const(_cn(el))
    if tag == "csymbol":
        raise UnsupportedConstruct(el.get("definitionURL", "csymbol").rsplit("/", 1)[-1])
    if tag != "apply":
        raise UnsupportedConstruct(tag)
    head, *args = list(el)
    fn = _local(head.tag)
    if fn == "ci":
        raise UnsupportedConstruct("apply")
    terms = [_mathml(a, resolve) for a in args]
    if fn in _NARY:
        if not terms:
            raise InputError(f"empty <{fn}>")
        out = terms[0]
        for t in terms[1:]:
            out = BinOp(_NARY[fn], out, t)
        return out
    if fn == "minus":
        if len(terms) == 1:
            return neg(terms[0])
        if len(terms) == 2:
            return BinOp(Op.SUB, terms[0], terms[1])
    elif fn == "divide" and len(terms) == 2:
        return BinOp(Op.DIV, terms[0], terms[1])
    elif fn == "power" and len(terms) == 2:
        exp = terms[1]
        if isinstance(exp, Const) and exp.name is None and exp.value.denominator == 1 and exp.value >= 0:
            n = int(exp.value)
            if n == 0:
                return Const(Fraction(1))
            out = terms[0]
            for _ in range(n - 1):
                out = BinOp(Op.MUL, out, terms[0])
            return out
        raise UnsupportedConstruct("power with non-integer exponent")
    else:
        raise UnsupportedConstruct(fn)
    raise InputError(f"wrong number of arguments for <{fn}>")


def _cn(el: ET.Element) -> Fraction:
    kind = el.get("type", "real")
    parts = [(el.text or "").strip()] + [(s.tail or "").strip() for s in el if _local(s.tag) == "sep"]
    if kind == "e-notation":
        return _number(parts[0]) * Fraction(10) ** int(parts[1])
    if kind == "rational":
        return _number(parts[0]) / _number(parts[1])
    return _number(parts[0])


# ---------------------------------------------------------------- writer


def _math(t: Term) -> ET.Element:
    if isinstance(t, Var):
        el = ET.Element("ci")
        el.text = t.base
        return el
    if isinstance(t, Const):
        if t.name is not None:
            el = ET.Element("ci")
            el.text = t.name
            return el
        if t.value.denominator == 1:
            el = ET.Element("cn", type="integer")
            el.text = str(t.value.numerator)
        else:
            el = ET.Element("cn", type="rational")
            el.text = str(t.value.numerator)
            sep = ET.SubElement(el, "sep")
            sep.tail = str(t.value.denominator)
        return el
    el = ET.Element("apply")
    name = {Op.ADD: "plus", Op.SUB: "minus", Op.MUL: "times", Op.DIV: "divide"}[t.op]
    ET.SubElement(el, name)
    el.append(_math(t.left))
    el.append(_math(t.right))
    return el


def _fmt(x: Fraction) -> str:
    return format_number(x)


def render_coresbml(rn: ReactionNetwork) -> str:
    """Serialize a network to the accepted XML subset."""
    root = ET.Element("sbml", xmlns=SBML_NS, level="3", version="2")
    model = ET.SubElement(root, "model", id=rn.name or "model")
    if rn.species:
        los = ET.SubElement(model, "listOfSpecies")
        for s in rn.species:
            ET.SubElement(los, "species", id=s, boundaryCondition="false", constant="false")
    if rn.constants:
        lop = ET.SubElement(model, "listOfParameters")
        for k in rn.constants:
            attrs = {"id": k.name, "constant": "true"}
            if k.value is not None:
                attrs["value"] = _fmt(k.value)
            ET.SubElement(lop, "parameter", attrs)
    if rn.reactions:
        lor = ET.SubElement(model, "listOfReactions")
        for r in rn.reactions:
            rel = ET.SubElement(lor, "reaction", id=r.id, reversible="false")
            for tag, pool in (("listOfReactants", r.reactants), ("listOfProducts", r.products)):
                if pool:
                    lst = ET.SubElement(rel, tag)
                    for s, c in pool:
                        ET.SubElement(lst, "speciesReference", species=s, stoichiometry=_fmt(c))
            law = ET.SubElement(rel, "kineticLaw")
            math = ET.SubElement(law, "math", xmlns=MATHML_NS)
            math.append(_math(r.kinetics))
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
