#include "selector/entities.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace drweb::html::detail {
namespace {

struct Entity {
  std::string_view name;
  std::uint32_t codepoint;
  bool legacy;  // recognized without a trailing ';'
};

// Sorted by name.
constexpr Entity kEntities[] = {
    {"AElig", 0xC6, true},
    {"Aacute", 0xC1, true},
    {"Acirc", 0xC2, true},
    {"Agrave", 0xC0, true},
    {"Alpha", 0x391, false},
    {"Aring", 0xC5, true},
    {"Atilde", 0xC3, true},
    {"Auml", 0xC4, true},
    {"Beta", 0x392, false},
    {"Ccedil", 0xC7, true},
    {"Dagger", 0x2021, false},
    {"Delta", 0x394, false},
    {"ETH", 0xD0, true},
    {"Eacute", 0xC9, true},
    {"Ecirc", 0xCA, true},
    {"Egrave", 0xC8, true},
    {"Euml", 0xCB, true},
    {"Gamma", 0x393, false},
    {"Iacute", 0xCD, true},
    {"Icirc", 0xCE, true},
    {"Igrave", 0xCC, true},
    {"Iuml", 0xCF, true},
    {"NewLine", 0xA, false},
    {"Ntilde", 0xD1, true},
    {"OElig", 0x152, false},
    {"Oacute", 0xD3, true},
    {"Ocirc", 0xD4, true},
    {"Ograve", 0xD2, true},
    {"Omega", 0x3A9, false},
    {"Oslash", 0xD8, true},
    {"Otilde", 0xD5, true},
    {"Ouml", 0xD6, true},
    {"Prime", 0x2033, false},
    {"Scaron", 0x160, false},
    {"THORN", 0xDE, true},
    {"Tab", 0x9, false},
    {"Uacute", 0xDA, true},
    {"Ucirc", 0xDB, true},
    {"Ugrave", 0xD9, true},
    {"Uuml", 0xDC, true},
    {"Yacute", 0xDD, true},
    {"Yuml", 0x178, false},
    {"aacute", 0xE1, true},
    {"acirc", 0xE2, true},
    {"acute", 0xB4, true},
    {"aelig", 0xE6, true},
    {"agrave", 0xE0, true},
    {"alpha", 0x3B1, false},
    {"amp", 0x26, true},
    {"apos", 0x27, false},
    {"aring", 0xE5, true},
    {"ast", 0x2A, false},
    {"atilde", 0xE3, true},
    {"auml", 0xE4, true},
    {"bdquo", 0x201E, false},
    {"beta", 0x3B2, false},
    {"brvbar", 0xA6, true},
    {"bsol", 0x5C, false},
    {"bull", 0x2022, false},
    {"ccedil", 0xE7, true},
    {"cedil", 0xB8, true},
    {"cent", 0xA2, true},
    {"check", 0x2713, false},
    {"circ", 0x2C6, false},
    {"clubs", 0x2663, false},
    {"colon", 0x3A, false},
    {"comma", 0x2C, false},
    {"commat", 0x40, false},
    {"copy", 0xA9, true},
    {"curren", 0xA4, true},
    {"dagger", 0x2020, false},
    {"darr", 0x2193, false},
    {"deg", 0xB0, true},
    {"delta", 0x3B4, false},
    {"diams", 0x2666, false},
    {"divide", 0xF7, true},
    {"dollar", 0x24, false},
    {"eacute", 0xE9, true},
    {"ecirc", 0xEA, true},
    {"egrave", 0xE8, true},
    {"emsp", 0x2003, false},
    {"ensp", 0x2002, false},
    {"epsilon", 0x3B5, false},
    {"equals", 0x3D, false},
    {"eth", 0xF0, true},
    {"euml", 0xEB, true},
    {"euro", 0x20AC, false},
    {"excl", 0x21, false},
    {"fnof", 0x192, false},
    {"frac12", 0xBD, true},
    {"frac14", 0xBC, true},
    {"frac34", 0xBE, true},
    {"gamma", 0x3B3, false},
    {"ge", 0x2265, false},
    {"grave", 0x60, false},
    {"gt", 0x3E, true},
    {"half", 0xBD, false},
    {"harr", 0x2194, false},
    {"hearts", 0x2665, false},
    {"hellip", 0x2026, false},
    {"iacute", 0xED, true},
    {"icirc", 0xEE, true},
    {"iexcl", 0xA1, true},
    {"igrave", 0xEC, true},
    {"infin", 0x221E, false},
    {"iquest", 0xBF, true},
    {"iuml", 0xEF, true},
    {"lambda", 0x3BB, false},
    {"laquo", 0xAB, true},
    {"larr", 0x2190, false},
    {"lcub", 0x7B, false},
    {"ldquo", 0x201C, false},
    {"le", 0x2264, false},
    {"lowbar", 0x5F, false},
    {"loz", 0x25CA, false},
    {"lpar", 0x28, false},
    {"lrm", 0x200E, false},
    {"lsaquo", 0x2039, false},
    {"lsqb", 0x5B, false},
    {"lsquo", 0x2018, false},
    {"lt", 0x3C, true},
    {"macr", 0xAF, true},
    {"mdash", 0x2014, false},
    {"micro", 0xB5, true},
    {"middot", 0xB7, true},
    {"minus", 0x2212, false},
    {"mu", 0x3BC, false},
    {"nbsp", 0xA0, true},
    {"ndash", 0x2013, false},
    {"ne", 0x2260, false},
    {"not", 0xAC, true},
    {"ntilde", 0xF1, true},
    {"num", 0x23, false},
    {"oacute", 0xF3, true},
    {"ocirc", 0xF4, true},
    {"oelig", 0x153, false},
    {"ograve", 0xF2, true},
    {"omega", 0x3C9, false},
    {"ordf", 0xAA, true},
    {"ordm", 0xBA, true},
    {"oslash", 0xF8, true},
    {"otilde", 0xF5, true},
    {"ouml", 0xF6, true},
    {"para", 0xB6, true},
    {"percnt", 0x25, false},
    {"period", 0x2E, false},
    {"permil", 0x2030, false},
    {"pi", 0x3C0, false},
    {"plus", 0x2B, false},
    {"plusmn", 0xB1, true},
    {"pound", 0xA3, true},
    {"prime", 0x2032, false},
    {"quest", 0x3F, false},
    {"quot", 0x22, true},
    {"raquo", 0xBB, true},
    {"rarr", 0x2192, false},
    {"rcub", 0x7D, false},
    {"rdquo", 0x201D, false},
    {"reg", 0xAE, true},
    {"rlm", 0x200F, false},
    {"rpar", 0x29, false},
    {"rsaquo", 0x203A, false},
    {"rsqb", 0x5D, false},
    {"rsquo", 0x2019, false},
    {"sbquo", 0x201A, false},
    {"scaron", 0x161, false},
    {"sect", 0xA7, true},
    {"semi", 0x3B, false},
    {"shy", 0xAD, true},
    {"sigma", 0x3C3, false},
    {"sol", 0x2F, false},
    {"spades", 0x2660, false},
    {"star", 0x2606, false},
    {"starf", 0x2605, false},
    {"sup1", 0xB9, true},
    {"sup2", 0xB2, true},
    {"sup3", 0xB3, true},
    {"szlig", 0xDF, true},
    {"thinsp", 0x2009, false},
    {"thorn", 0xFE, true},
    {"tilde", 0x2DC, false},
    {"times", 0xD7, true},
    {"trade", 0x2122, false},
    {"uacute", 0xFA, true},
    {"uarr", 0x2191, false},
    {"ucirc", 0xFB, true},
    {"ugrave", 0xF9, true},
    {"uml", 0xA8, true},
    {"uuml", 0xFC, true},
    {"verbar", 0x7C, false},
    {"yacute", 0xFD, true},
    {"yen", 0xA5, true},
    {"yuml", 0xFF, true},
    {"zwj", 0x200D, false},
    {"zwnj", 0x200C, false}
};

// Windows-1252 remapping of numeric references in 0x80..0x9F.
constexpr std::array<std::uint16_t, 32> kC1Remap = {
    0x20AC, 0x0081, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0x008D, 0x017D, 0x008F, 0x0090, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0x009D, 0x017E, 0x0178};

bool is_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::size_t decode_numeric(std::string_view input, std::string& out) {
  std::size_t i = 1;
  bool hex = i < input.size() && (input[i] == 'x' || input[i] == 'X');
  if (hex) ++i;
  std::size_t digits_start = i;
  std::uint64_t value = 0;
  while (i < input.size()) {
    char c = input[i];
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
    if (d < 0) break;
    value = std::min<std::uint64_t>(value * (hex ? 16 : 10) + static_cast<std::uint64_t>(d), 0x110000);
    ++i;
  }
  if (i == digits_start) return 0;
  if (i < input.size() && input[i] == ';') ++i;
  std::uint32_t cp = static_cast<std::uint32_t>(value);
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  else if (cp >= 0x80 && cp <= 0x9F) cp = kC1Remap[cp - 0x80];
  append_utf8(out, cp);
  return i;
}

}  // namespace

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::size_t decode_reference(std::string_view input, bool in_attribute, std::string& out) {
  if (input.empty()) return 0;
  if (input[0] == '#') return decode_numeric(input, out);
  std::size_t len = 0;
  while (len < input.size() && is_alnum(input[len])) ++len;
  if (len == 0) return 0;
  std::string_view word = input.substr(0, len);
  bool has_semicolon = len < input.size() && input[len] == ';';
  auto find = [](std::string_view name) -> const Entity* {
    auto it = std::lower_bound(std::begin(kEntities), std::end(kEntities), name,
                               [](const Entity& e, std::string_view n) { return e.name < n; });
    return it != std::end(kEntities) && it->name == name ? &*it : nullptr;
  };
  if (has_semicolon) {
    if (const Entity* e = find(word)) {
      append_utf8(out, e->codepoint);
      return len + 1;
    }
  }
  // Longest legacy prefix, e.g. "&copy2024" or "&amp".
  for (std::size_t n = len; n > 0; --n) {
    const Entity* e = find(word.substr(0, n));
    if (!e || !e->legacy) continue;
    if (n == len && has_semicolon) break;
    if (in_attribute) {
      char next = n < input.size() ? input[n] : '\0';
      if (next == '=' || is_alnum(next)) return 0;
    }
    append_utf8(out, e->codepoint);
    return n;
  }
  return 0;
}

}  // namespace drweb::html::detail
