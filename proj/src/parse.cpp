#include "blab/parse.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>

namespace blab {
namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad system descriptor at offset " + std::to_string(pos) +
                                    ": " + what);
    }
    std::string word() {
        skip_ws();
        std::string w;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            w += static_cast<char>(std::tolower(static_cast<unsigned char>(text[pos])));
            ++pos;
        }
        if (w.empty()) fail("expected a keyword");
        return w;
    }
    double number() {
        skip_ws();
        std::size_t end = pos;
        while (end < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '.' ||
                text[end] == '-' || text[end] == '+' || text[end] == 'e' || text[end] == 'E'))
            ++end;
        const std::string token(text.substr(pos, end - pos));
        if (token.empty()) fail("expected a number");
        try {
            const double v = std::stod(token);
            pos = end;
            return v;
        } catch (...) {
            fail("bad number: " + token);
        }
    }
    std::string until(char stop1, char stop2) {
        skip_ws();
        std::string w;
        while (pos < text.size() && text[pos] != stop1 && text[pos] != stop2) {
            if (!std::isspace(static_cast<unsigned char>(text[pos])))
                w += text[pos];
            ++pos;
        }
        return w;
    }
};

BourgainSystem parse_node(Cursor& c);

BourgainSystem parse_trivial(Cursor& c) {
    c.expect('(');
    const std::string key = c.word();
    if (key != "g") c.fail("expected g=<group>");
    c.expect('=');
    const Group g = parse_group(c.until(')', ')'));
    c.expect(')');
    return BourgainSystem::trivial(g);
}

BourgainSystem parse_bohr(Cursor& c) {
    c.expect('(');
    std::string key = c.word();
    if (key != "g") c.fail("expected g=<group>");
    c.expect('=');
    const Group g = parse_group(c.until(';', ')'));
    c.expect(';');
    key = c.word();
    if (key != "freqs") c.fail("expected freqs=<list>");
    c.expect('=');
    BohrDescriptor desc;
    const auto freq_values = parse_int_list(c.until(';', ')'));
    for (std::int64_t f : freq_values) {
        if (f < 0 || static_cast<std::uint64_t>(f) >= g.size())
            c.fail("frequency outside the dual group");
        desc.frequencies.push_back(static_cast<Index>(f));
    }
    c.expect(';');
    key = c.word();
    if (key != "delta") c.fail("expected delta=<real>");
    c.expect('=');
    desc.delta = c.number();
    c.expect(')');
    return BourgainSystem::bohr(g, std::move(desc));
}

BourgainSystem parse_node(Cursor& c) {
    const std::string head = c.word();
    if (head == "trivial") return parse_trivial(c);
    if (head == "bohr") return parse_bohr(c);
    if (head == "dilate") {
        c.expect('(');
        const double lam = c.number();
        c.expect(',');
        BourgainSystem inner = parse_node(c);
        c.expect(')');
        return inner.dilate(lam);
    }
    if (head == "double") {
        c.expect('(');
        BourgainSystem inner = parse_node(c);
        c.expect(')');
        return inner.double_system();
    }
    if (head == "intersect") {
        c.expect('(');
        std::vector<BourgainSystem> parts;
        parts.push_back(parse_node(c));
        while (c.eat(';')) parts.push_back(parse_node(c));
        c.expect(')');
        return BourgainSystem::intersect(parts);
    }
    c.fail("unknown rule: " + head);
}

} // namespace

BourgainSystem parse_system(std::string_view text) {
    Cursor c{text};
    BourgainSystem s = parse_node(c);
    c.skip_ws();
    if (c.pos != text.size()) c.fail("trailing input");
    return s;
}

} // namespace blab
