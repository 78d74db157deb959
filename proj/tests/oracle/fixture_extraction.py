#!/usr/bin/env python3
"""Freezes the expected childcare extraction using lxml.

Applies the childcare sample query to the hand-authored fixture pages by
hand (follow = first href, resolved against the search page path) and writes
tests/data/golden/childcare-data.json in the engine's output format: 2-space
indent, ASCII escapes, trailing newline.

Run from the repository root:  python3 tests/oracle/fixture_extraction.py
"""
import json
import pathlib
import re

from lxml import etree

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"
SITE = DATA / "site"


def norm(s):
    return re.sub(r"[ \t\r\n]+", " ", s).strip(" ")


def value(ctx, expr):
    trailing = expr.endswith("/normalize-space()")
    if trailing:
        expr = expr[: -len("/normalize-space()")]
    out = []
    for r in ctx.xpath(expr):
        s = r if isinstance(r, str) else r.xpath("string(.)")
        out.append(norm(s) if trailing else str(s))
    if not out:
        return None
    return out[0] if len(out) == 1 else out


def load(path):
    return etree.parse(str(SITE / path.lstrip("/")), etree.HTMLParser(encoding="utf-8"))


def records(ctx, step_xpath, fields):
    return [{k: value(el, x) for k, x in fields} for el in ctx.xpath(step_xpath)]


def main():
    search = load("search/babysitters.html")
    out = []
    for el in search.xpath("//div[contains(@class, 'search-result')]"):
        rec = {k: value(el, x) for k, x in [
            ("full_name", ".//div[contains(@class, 'items-baseline')]/div[1]/span[1]/text()"),
            ("ratings", ".//div[contains(@class, 'rating')]/span[1]/text()"),
            ("image_url", ".//div[contains(@class, 'profile-image')]//img[1]/@src"),
        ]}
        href = el.xpath(".//div[contains(@class, 'profile-image')]//a[1]/@href")[0]
        page = load(href)
        rec["profile"] = records(page, "//div[contains(@class, 'profile featured')]", [
            ("bio", ".//h3[text()='About Me']/../p/normalize-space()"),
            ("experience", ".//h3[text()='My Experience']/../p/normalize-space()"),
        ])
        rec["reviews"] = records(page, "//div[@id='reviews']//div[contains(@class, 'review')]", [
            ("reviewer", ".//p[2]//a/text()"),
            ("reviewer_profile", ".//p[2]//a/@href"),
            ("rating", ".//div[contains(@class, 'rating')]//img/@alt"),
            ("comment", ".//p[1]/normalize-space()"),
        ])
        out.append(rec)
    text = json.dumps(out, indent=2, ensure_ascii=True) + "\n"
    (DATA / "golden" / "childcare-data.json").write_text(text, encoding="ascii")
    print(f"wrote {len(out)} records")


if __name__ == "__main__":
    main()
