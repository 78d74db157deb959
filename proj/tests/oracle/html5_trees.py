#!/usr/bin/env python3
"""Freezes reference parse trees for the HTML soup corpus.

Parses every tests/data/html_soup/*.html with html5lib (a spec-conformant
HTML5 parser) and writes <name>.tree next to it, in the same line format as
dom::dump_tree: comments and whitespace-only text nodes are dropped,
attributes sorted by name.

Run from the repository root:  python3 tests/oracle/html5_trees.py
"""
import pathlib
import xml.etree.ElementTree as ET

import html5lib

ROOT = pathlib.Path(__file__).resolve().parents[1] / "data" / "html_soup"


def esc(s):
    return s.replace("\\", "\\\\").replace("\n", "\\n").replace("\t", "\\t").replace('"', '\\"')


def blank(s):
    return s is None or s.strip(" \t\n\r\f") == ""


def local(tag):
    return tag.split("}", 1)[1] if "}" in tag else tag


def dump(el, depth, out):
    if el.tag is ET.Comment:
        return
    ind = "  " * depth
    out.append(f"{ind}<{local(el.tag)}>")
    for name in sorted(el.attrib):
        out.append(f'{ind}  @{local(name)}="{esc(el.attrib[name])}"')
    if not blank(el.text):
        out.append(f'{ind}  "{esc(el.text)}"')
    for child in el:
        dump(child, depth + 1, out)
        if not blank(child.tail):
            out.append(f'{ind}  "{esc(child.tail)}"')


def main():
    for path in sorted(ROOT.glob("*.html")):
        doc = html5lib.parse(path.read_bytes(), treebuilder="etree", namespaceHTMLElements=False,
                             transport_encoding="utf-8")
        out = ["#document"]
        dump(doc, 1, out)
        path.with_suffix(".tree").write_text("\n".join(out) + "\n", encoding="utf-8")
        print("wrote", path.with_suffix(".tree").name)


if __name__ == "__main__":
    main()
