#!/usr/bin/env python3
"""Freezes reference XPath results for the differential test.

Generates small random HTML documents (seeded, well-formed, phrasing content
only inside <p>/<a>/<h3>/<span>) and evaluates the expression corpus with
lxml (libxml2's XPath 1.0 engine) from the <html> element and from every
<div>. Writes tests/data/xpath_diff/doc_NN.html and expected.json.

Node identity is encoded independently of either implementation:
  element   /html[1]/body[1]/div[2]     (index among same-name siblings)
  attribute <element>/@name
  text      <element>/text()[k]         (k-th text child)

Trailing `/normalize-space()` steps are not XPath 1.0; for those the prefix
path is evaluated by lxml and each node's string-value normalized by hand
(collapse runs of space/tab/CR/LF, trim).

Run from the repository root:  python3 tests/oracle/xpath_differential.py
"""
import json
import re
import pathlib
import random

from lxml import etree

OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "xpath_diff"
DOCS = 60
SEED = 20240611

EXPRESSIONS = [
    # Expressions used by the sample queries
    "//div[contains(@class, 'thread')]",
    ".//div[contains(@class, 'teaser')]/text()",
    "./a/@href",
    ".//div[contains(@class, 'meta')]/text()",
    "//div[contains(@class, 'search-result')]",
    ".//div[contains(@class, 'items-baseline')]/div[1]/span[1]/text()",
    ".//div[contains(@class, 'rating')]/span[1]/text()",
    ".//span[contains(@class, 'distance')]/span[2]/normalize-space()",
    ".//div[contains(@class, 'profile-image')]//img[1]/@src",
    ".//div[contains(@class, 'profile-image')]//a[1]/@href",
    "//div[contains(@class, 'profile featured')]",
    ".//h3[text()='About Me']/../p/normalize-space()",
    ".//h3[text()='My Experience']/../p/normalize-space()",
    "//div[@id='reviews']//div[contains(@class, 'review')]",
    ".//p[2]//a/text()",
    ".//p[2]//a/@href",
    ".//div[contains(@class, 'rating')]//img/@alt",
    ".//p[1]/normalize-space()",
    # Broader coverage of the supported subset
    "//a/@href",
    "//span[2]",
    "//p[1]",
    "//div/text()",
    ".//*[@class]",
    "//div[contains(@class, 'thread') and @id]",
    "//div[@class='rating' or @class='meta']",
    "//h3[text()='About Me']/../p",
    "//div[not(@id)]/span[1]",
    "//p[position() = last()]",
    "//div[count(span) > 1]",
    "//a[starts-with(@href, '/t/')]",
    "//img[1]/@src",
    "..",
    "./*",
    "./text()",
    ".//@*",
    "//div[@id!='reviews']",
    "normalize-space(.//h3)",
    "//span[.='R: 82']",
]

CLASSES = ["thread", "teaser", "meta", "search-result", "items-baseline", "rating", "profile-image",
           "profile featured", "review", "distance", "thread t", "review big", "x-rating"]
WORDS = ["alpha", "beta", "R: 82", "I: 14▶", "café", "About Me", "My Experience", "x", "y z",
         "Hinduphobia", "82", "3.5"]


def text_snippet(rng):
    words = [rng.choice(WORDS) for _ in range(rng.randint(1, 3))]
    s = " ".join(words)
    pad = rng.choice(["", " ", "\n  ", "  ", "\t"])
    return pad + s + rng.choice(["", " ", "\n", "  "])


def esc(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def attr(rng, name, value):
    return f' {name}="{esc(value)}"'


def phrasing(rng, depth):
    kind = rng.choice(["text", "text", "span", "a", "img", "b"])
    if kind == "text" or depth > 3:
        return esc(text_snippet(rng))
    if kind == "img":
        return f'<img src="/img/{rng.randint(1, 9)}.png"{attr(rng, "alt", rng.choice(WORDS)) if rng.random() < 0.7 else ""}>'
    if kind == "a":
        href = rng.choice(["/t/", "/profile/", "//boards.example/t/", "https://x.example/"]) + str(rng.randint(1, 99))
        inner = "".join(phrasing_no_a(rng, depth + 1) for _ in range(rng.randint(1, 2)))
        return f'<a href="{href}">{inner}</a>'
    cls = attr(rng, "class", rng.choice(CLASSES)) if rng.random() < 0.5 else ""
    inner = "".join(phrasing(rng, depth + 1) for _ in range(rng.randint(1, 3)))
    return f"<{kind}{cls}>{inner}</{kind}>"


def phrasing_no_a(rng, depth):
    while True:
        s = phrasing(rng, depth)
        if "<a " not in s:
            return s


def block(rng, depth):
    kind = rng.choice(["div", "div", "p", "h3", "span"] if depth < 4 else ["p", "span", "h3"])
    if kind == "div":
        attrs = ""
        if rng.random() < 0.75:
            attrs += attr(rng, "class", rng.choice(CLASSES))
        if rng.random() < 0.2:
            attrs += attr(rng, "id", rng.choice(["reviews", "main", "r1", "t1"]))
        children = []
        for _ in range(rng.randint(1, 4)):
            if rng.random() < 0.6:
                children.append(block(rng, depth + 1))
            else:
                children.append(phrasing(rng, depth + 1))
        # Keep text nodes non-blank between blocks: no separators.
        return f"<div{attrs}>{''.join(children)}</div>"
    if kind == "h3":
        return f"<h3>{esc(rng.choice(['About Me', 'My Experience', 'Other']))}</h3>"
    inner = "".join(phrasing(rng, depth + 1) for _ in range(rng.randint(1, 3)))
    cls = attr(rng, "class", rng.choice(CLASSES)) if rng.random() < 0.3 else ""
    comment = "<!-- c -->" if rng.random() < 0.1 else ""
    return f"<{kind}{cls}>{inner}{comment}</{kind}>"


def make_doc(rng):
    body = "".join(block(rng, 0) for _ in range(rng.randint(2, 5)))
    return f"<html><head><title>t</title></head><body>{body}</body></html>"


def element_id(el):
    parts = []
    while el is not None:
        parent = el.getparent()
        if parent is None:
            parts.append(f"{el.tag}[1]")
        else:
            same = [c for c in parent if c.tag == el.tag]
            parts.append(f"{el.tag}[{same.index(el) + 1}]")
        el = parent
    return "/" + "/".join(reversed(parts))


def text_id(result):
    owner = result.getparent()
    if result.is_text:
        return f"{element_id(owner)}/text()[1]"
    # tail text of `owner`
    parent = owner.getparent()
    k = 1 if parent.text else 0
    for child in parent:
        if child.tail:
            k += 1
        if child is owner:
            break
    return f"{element_id(parent)}/text()[{k}]"


def node_id(n):
    if isinstance(n, etree._Element):
        return element_id(n)
    if getattr(n, "is_attribute", False):
        return f"{element_id(n.getparent())}/@{n.attrname}"
    if getattr(n, "is_text", False) or getattr(n, "is_tail", False):
        return text_id(n)
    raise TypeError(f"unexpected result {n!r}")


def string_value(n):
    if isinstance(n, etree._Element):
        return n.xpath("string(.)")
    return str(n)


def normalize(s):
    return re.sub(r"[ \t\r\n]+", " ", s).strip(" ")


def collapse(values):
    if not values:
        return None
    if len(values) == 1:
        return values[0]
    return values


def evaluate(ctx, expr):
    trailing = expr.endswith("/normalize-space()")
    path = expr[: -len("/normalize-space()")] if trailing else expr
    result = ctx.xpath(path)
    if isinstance(result, list):
        nodes = [node_id(n) for n in result]
        values = [normalize(string_value(n)) if trailing else string_value(n) for n in result]
        return (None if trailing else nodes), collapse(values)
    if isinstance(result, bool):
        return None, "true" if result else "false"
    if isinstance(result, float):
        return None, str(int(result)) if result.is_integer() else repr(result)
    return None, str(result)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    docs = []
    for i in range(DOCS):
        html = make_doc(rng)
        name = f"doc_{i:02d}.html"
        (OUT / name).write_text(html, encoding="utf-8")
        root = etree.HTML(html.encode("utf-8"), parser=etree.HTMLParser(encoding="utf-8"))
        contexts = [root] + root.xpath("//div")
        cases = []
        for ctx in contexts:
            for k, expr in enumerate(EXPRESSIONS):
                # lxml cannot return the document node as the parent of <html>.
                if ctx is root and expr == "..":
                    continue
                nodes, value = evaluate(ctx, expr)
                cases.append({"context": element_id(ctx), "expr": k, "nodes": nodes, "value": value})
        docs.append({"file": name, "cases": cases})
    (OUT / "expected.json").write_text(
        json.dumps({"seed": SEED, "expressions": EXPRESSIONS, "documents": docs}, ensure_ascii=False, indent=1),
        encoding="utf-8")
    print(f"wrote {DOCS} documents, {sum(len(d['cases']) for d in docs)} cases")


if __name__ == "__main__":
    main()
