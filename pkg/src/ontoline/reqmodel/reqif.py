"""ReqIF subset writer/reader.

Only string datatypes are used. Every requirement is one ``SPEC-OBJECT``
whose ``ATTRIBUTE-VALUE-STRING`` children follow :data:`ATTRIBUTES` order,
and one flat ``SPEC-HIERARCHY`` fixes the requirement order.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

from ontoline.errors import ReqModelError, SchemaViolation, UnknownAttribute
from ontoline.reqmodel.constraint import MetricConstraint
from ontoline.reqmodel.ears import EarsPattern, parse_ears
from ontoline.reqmodel.requirements import (
    Requirement,
    RequirementSet,
    VerificationState,
    split_links,
)

REQIF_NS = "http://www.omg.org/spec/ReqIF/20110401/reqif.xsd"
SPEC_OBJECT_TYPE = "Requirement"
DATATYPE_ID = "DT-String"
SPEC_OBJECT_TYPE_ID = "SOT-Requirement"
SPECIFICATION_ID = "SPEC-Requirements"

# TraceLinks and Evidence extend the core attribute list so export/import is
# lossless for every Requirement field.
ATTRIBUTES = ("Text", "Pattern", "SystemName", "Response", "Constraint", "Verification",
              "TraceLinks", "Evidence")
REQUIRED_ATTRIBUTES = ATTRIBUTES[:6]


def _q(tag: str) -> str:
    return f"{{{REQIF_NS}}}{tag}"


def _attr_id(name: str) -> str:
    return f"AD-{name}"


def _values(req: Requirement) -> dict[str, str]:
    return {
        "Text": req.raw_text,
        "Pattern": req.pattern.value,
        "SystemName": req.system_name,
        "Response": req.response,
        "Constraint": req.constraint.render() if req.constraint else "",
        "Verification": req.verification.value,
        "TraceLinks": ";".join(req.trace_links),
        "Evidence": json.dumps(list(req.audit), ensure_ascii=False) if req.audit else "",
    }


def export_reqif(reqs: RequirementSet) -> str:
    """Serialize to a byte-deterministic ReqIF document (two-space indent)."""
    ET.register_namespace("", REQIF_NS)
    root = ET.Element(_q("REQ-IF"))

    header = ET.SubElement(ET.SubElement(root, _q("THE-HEADER")), _q("REQ-IF-HEADER"),
                           {"IDENTIFIER": "header"})
    ET.SubElement(header, _q("CREATION-TIME")).text = reqs.creation_time
    ET.SubElement(header, _q("IDENTIFIER")).text = "ontoline-requirements"
    ET.SubElement(header, _q("TITLE")).text = reqs.title

    content = ET.SubElement(ET.SubElement(root, _q("CORE-CONTENT")), _q("REQ-IF-CONTENT"))
    datatypes = ET.SubElement(content, _q("DATATYPES"))
    ET.SubElement(datatypes, _q("DATATYPE-DEFINITION-STRING"),
                  {"IDENTIFIER": DATATYPE_ID, "LONG-NAME": "String", "MAX-LENGTH": "32000"})

    spec_types = ET.SubElement(content, _q("SPEC-TYPES"))
    sot = ET.SubElement(spec_types, _q("SPEC-OBJECT-TYPE"),
                        {"IDENTIFIER": SPEC_OBJECT_TYPE_ID, "LONG-NAME": SPEC_OBJECT_TYPE})
    spec_attributes = ET.SubElement(sot, _q("SPEC-ATTRIBUTES"))
    for name in ATTRIBUTES:
        ad = ET.SubElement(spec_attributes, _q("ATTRIBUTE-DEFINITION-STRING"),
                           {"IDENTIFIER": _attr_id(name), "LONG-NAME": name})
        ET.SubElement(ET.SubElement(ad, _q("TYPE")),
                      _q("DATATYPE-DEFINITION-STRING-REF")).text = DATATYPE_ID

    spec_objects = ET.SubElement(content, _q("SPEC-OBJECTS"))
    for req in reqs:
        so = ET.SubElement(spec_objects, _q("SPEC-OBJECT"), {"IDENTIFIER": req.id})
        ET.SubElement(ET.SubElement(so, _q("TYPE")),
                      _q("SPEC-OBJECT-TYPE-REF")).text = SPEC_OBJECT_TYPE_ID
        values = ET.SubElement(so, _q("VALUES"))
        for name, value in _values(req).items():
            av = ET.SubElement(values, _q("ATTRIBUTE-VALUE-STRING"), {"THE-VALUE": value})
            ET.SubElement(ET.SubElement(av, _q("DEFINITION")),
                          _q("ATTRIBUTE-DEFINITION-STRING-REF")).text = _attr_id(name)

    specs = ET.SubElement(content, _q("SPECIFICATIONS"))
    spec = ET.SubElement(specs, _q("SPECIFICATION"),
                         {"IDENTIFIER": SPECIFICATION_ID, "LONG-NAME": reqs.title})
    children = ET.SubElement(spec, _q("CHILDREN"))
    for req in reqs:
        sh = ET.SubElement(children, _q("SPEC-HIERARCHY"), {"IDENTIFIER": f"SH-{req.id}"})
        ET.SubElement(ET.SubElement(sh, _q("OBJECT")), _q("SPEC-OBJECT-REF")).text = req.id

    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + "\n"


def _find(parent: ET.Element, path: str) -> ET.Element:
    node = parent.find(path)
    if node is None:
        raise SchemaViolation(f"missing {path.replace('{' + REQIF_NS + '}', '')}")
    return node


def _path(*tags: str) -> str:
    return "/".join(_q(t) for t in tags)


def import_reqif(doc: str | bytes) -> RequirementSet:
    """Parse a document produced by :func:`export_reqif` (or a compatible subset)."""
    try:
        root = ET.fromstring(doc)
    except ET.ParseError as exc:
        raise SchemaViolation(f"not well-formed XML: {exc}") from None
    if root.tag != _q("REQ-IF"):
        raise SchemaViolation(f"root element is {root.tag}, expected REQ-IF")

    header = _find(root, _path("THE-HEADER", "REQ-IF-HEADER"))
    title = header.findtext(_q("TITLE"), default="")
    creation_time = header.findtext(_q("CREATION-TIME"), default="")
    content = _find(root, _path("CORE-CONTENT", "REQ-IF-CONTENT"))

    attr_names: dict[str, str] = {}
    for sot in _find(content, _q("SPEC-TYPES")).iter(_q("SPEC-OBJECT-TYPE")):
        for ad in sot.iter(_q("ATTRIBUTE-DEFINITION-STRING")):
            name = ad.get("LONG-NAME", "")
            if name not in ATTRIBUTES:
                raise UnknownAttribute(name)
            attr_names[ad.get("IDENTIFIER", "")] = name
    missing = [n for n in REQUIRED_ATTRIBUTES if n not in attr_names.values()]
    if missing:
        raise SchemaViolation(f"missing ATTRIBUTE-DEFINITION for {', '.join(missing)}")

    objects: dict[str, dict[str, str]] = {}
    for so in _find(content, _q("SPEC-OBJECTS")).findall(_q("SPEC-OBJECT")):
        ident = so.get("IDENTIFIER")
        if not ident:
            raise SchemaViolation("SPEC-OBJECT without IDENTIFIER")
        values = {}
        for av in so.iter(_q("ATTRIBUTE-VALUE-STRING")):
            ref = av.findtext(_path("DEFINITION", "ATTRIBUTE-DEFINITION-STRING-REF"))
            if ref not in attr_names:
                raise UnknownAttribute(f"{ident}: {ref}")
            values[attr_names[ref]] = av.get("THE-VALUE", "")
        objects[ident] = values

    order = [ref.text or "" for ref in content.iter(_q("SPEC-OBJECT-REF"))]
    if sorted(order) != sorted(objects):
        raise SchemaViolation("SPEC-HIERARCHY does not reference every SPEC-OBJECT exactly once")

    reqs = [_requirement(ident, objects[ident]) for ident in order]
    return RequirementSet(tuple(reqs), title=title, creation_time=creation_time)


def _requirement(ident: str, values: dict[str, str]) -> Requirement:
    missing = [n for n in REQUIRED_ATTRIBUTES if n not in values]
    if missing:
        raise SchemaViolation(f"{ident}: missing values for {', '.join(missing)}")
    text = values["Text"]
    try:
        pattern, _system, _response, clauses = parse_ears(text)
    except ReqModelError as exc:
        raise SchemaViolation(f"{ident}: {exc}") from exc
    if pattern is not EarsPattern(values["Pattern"]):
        raise SchemaViolation(f"{ident}: Pattern {values['Pattern']} disagrees with Text")
    constraint = MetricConstraint.from_text(values["Constraint"]) if values["Constraint"] else None
    evidence = values.get("Evidence", "")
    return Requirement(
        id=ident,
        raw_text=text,
        pattern=pattern,
        system_name=values["SystemName"],
        response=values["Response"],
        clauses=tuple(clauses),
        constraint=constraint,
        verification=VerificationState(values["Verification"]),
        trace_links=tuple(split_links(values.get("TraceLinks", ""))),
        audit=tuple(json.loads(evidence)) if evidence else (),
    )
