#include <string>

#include "cpath/error.hpp"
#include "cpath/kernel.hpp"
#include "cpath/syntax.hpp"

namespace cpath {

namespace {

constexpr std::string_view kAcute = "\xCC\x81";  // combining acute accent
constexpr std::string_view kArrow = "\xE2\x86\x92";  // →
constexpr std::string_view kPi = "\xCE\xA0";  // Π

bool simple_ground(const Path& p) {
    return p.kind() == PathKind::Atom || p.kind() == PathKind::Rho;
}

std::string notation_atom(const ProofTerm& t) {
    std::string s = to_notation(t);
    if (t.kind() == ProofTerm::Kind::Var || t.kind() == ProofTerm::Kind::Embed ||
        t.kind() == ProofTerm::Kind::Witness || t.kind() == ProofTerm::Kind::Rewr)
        return s;
    return "(" + s + ")";
}

}  // namespace

std::string to_notation(const ProofTerm& t) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t.name();
    case ProofTerm::Kind::Lam: return "\xCE\xBB" + t.name() + "." + to_notation(t.body());
    case ProofTerm::Kind::Apply: {
        std::string f = t.fun().kind() == ProofTerm::Kind::Lam ? "(" + to_notation(t.fun()) + ")" : to_notation(t.fun());
        return f + " " + notation_atom(t.arg());
    }
    case ProofTerm::Kind::Witness: {
        const Path& p = t.path();
        // A rule step already displays both of its endpoints.
        if (p.kind() == PathKind::RuleStep) return to_ground(p);
        std::string g = simple_ground(p) ? to_ground(p) : "(" + to_ground(p) + ")";
        return g + "(" + to_notation(t.lhs()) + "," + to_notation(t.rhs()) + ")";
    }
    case ProofTerm::Kind::Rewr:
        return "REWR(" + to_notation(t.major()) + ", " + t.name() + std::string(kAcute) + "." + to_notation(t.body()) +
               ")";
    case ProofTerm::Kind::Embed: return to_ground(t.path());
    }
    return {};
}

std::string to_notation(const TypeExpr& t) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return t.name();
    case TypeExpr::Kind::Id: {
        std::string c = to_notation(t.carrier());
        if (t.carrier().kind() != TypeExpr::Kind::Base) c = "{" + c + "}";
        return "Id_" + c + "(" + to_notation(t.lhs()) + "," + to_notation(t.rhs()) + ")";
    }
    case TypeExpr::Kind::Pi: {
        std::string cod = to_notation(t.codomain());
        if (t.codomain().kind() == TypeExpr::Kind::Arrow) cod = "(" + cod + ")";
        return std::string(kPi) + "_(" + t.name() + ":" + to_notation(t.domain()) + ")" + cod;
    }
    case TypeExpr::Kind::Arrow: {
        std::string dom = to_notation(t.domain());
        if (t.domain().kind() == TypeExpr::Kind::Arrow || t.domain().kind() == TypeExpr::Kind::Pi)
            dom = "(" + dom + ")";
        return dom + " " + std::string(kArrow) + " " + to_notation(t.codomain());
    }
    }
    return {};
}

std::string to_notation(const Judgment& j) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return to_notation(j.type) + " type";
    case Judgment::Kind::Typing: return to_notation(j.subject) + " : " + to_notation(j.type);
    case Judgment::Kind::PathEq: {
        std::string g = to_ground(j.path);
        std::string sub = simple_ground(j.path) ? g : "{" + g + "}";
        return to_notation(j.lhs) + " =_" + sub + " " + to_notation(j.rhs) + " : " + to_notation(j.type);
    }
    }
    return {};
}

std::string to_sexpr(const ProofTerm& t) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t.name();
    case ProofTerm::Kind::Lam: return "(lam " + t.name() + " " + to_sexpr(t.body()) + ")";
    case ProofTerm::Kind::Apply: return "(app " + to_sexpr(t.fun()) + " " + to_sexpr(t.arg()) + ")";
    case ProofTerm::Kind::Witness:
        return "(witness " + to_string(t.path()) + " " + to_sexpr(t.lhs()) + " " + to_sexpr(t.rhs()) + ")";
    case ProofTerm::Kind::Rewr:
        return "(rewr " + to_sexpr(t.major()) + " " + t.name() + " " + to_sexpr(t.body()) + ")";
    case ProofTerm::Kind::Embed: return "(embed " + to_string(t.path()) + ")";
    }
    return {};
}

std::string to_sexpr(const TypeExpr& t) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return t.name();
    case TypeExpr::Kind::Id:
        return "(Id " + to_sexpr(t.carrier()) + " " + to_sexpr(t.lhs()) + " " + to_sexpr(t.rhs()) + ")";
    case TypeExpr::Kind::Pi:
        return "(Pi " + t.name() + " " + to_sexpr(t.domain()) + " " + to_sexpr(t.codomain()) + ")";
    case TypeExpr::Kind::Arrow: return "(-> " + to_sexpr(t.domain()) + " " + to_sexpr(t.codomain()) + ")";
    }
    return {};
}

std::string to_sexpr(const Judgment& j) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return "(is-type " + to_sexpr(j.type) + ")";
    case Judgment::Kind::Typing: return "(has " + to_sexpr(j.subject) + " " + to_sexpr(j.type) + ")";
    case Judgment::Kind::PathEq:
        return "(eq " + to_sexpr(j.lhs) + " " + to_string(j.path) + " " + to_sexpr(j.rhs) + " " + to_sexpr(j.type) +
               ")";
    }
    return {};
}

std::string to_sexpr(const Derivation& d, std::size_t indent) {
    std::string pad(indent, ' ');
    std::string out = pad + "(rule " + std::string(rule_tag(d.rule, d.axiom));
    if (!d.label.empty()) out += " (label " + d.label + ")";
    out += "\n" + pad + "  (conclusion " + to_sexpr(d.conclusion) + ")";
    if (!d.premises.empty()) {
        out += "\n" + pad + "  (premises";
        for (const Derivation& p : d.premises) out += "\n" + to_sexpr(p, indent + 4);
        out += ")";
    }
    if (!d.discharged.empty()) {
        out += "\n" + pad + "  (discharge";
        for (const std::string& l : d.discharged) out += " " + l;
        out += ")";
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// Reading

namespace {

ProofTerm read_pt(Reader& in);

std::string read_tag(Reader& in) {
    std::string tag = in.identifier();
    while (in.looking_at("-") && !in.looking_at("->")) {
        in.consume("-");
        tag += "-" + in.identifier();
    }
    return tag;
}

ProofTerm read_pt(Reader& in) {
    if (in.looking_at_identifier()) return ProofTerm::var(in.identifier());
    in.skip_ws();
    const std::size_t open = in.offset();
    in.expect("(");
    if (in.looking_at("\\") || in.looking_at("\xCE\xBB")) {
        in.rewind(open);
        return ProofTerm::from_term(read_term_item(in));
    }
    const std::size_t at = (in.skip_ws(), in.offset());
    std::string head = in.identifier();
    ProofTerm out;
    if (head == "lam") {
        std::string x = in.identifier();
        out = ProofTerm::lam(std::move(x), read_pt(in));
    } else if (head == "app") {
        ProofTerm f = read_pt(in);
        out = ProofTerm::apply(std::move(f), read_pt(in));
    } else if (head == "witness") {
        Path p = read_path(in);
        ProofTerm l = read_pt(in);
        out = ProofTerm::witness(std::move(p), std::move(l), read_pt(in));
    } else if (head == "rewr") {
        ProofTerm m = read_pt(in);
        std::string g = in.identifier();
        out = ProofTerm::rewr(std::move(m), std::move(g), read_pt(in));
    } else if (head == "embed") {
        out = ProofTerm::embed(read_path(in));
    } else {
        in.fail_at(at, "unknown proof term form '" + head + "'");
    }
    in.expect(")");
    return out;
}

TypeExpr read_type(Reader& in) {
    if (in.looking_at_identifier()) {
        std::size_t at = (in.skip_ws(), in.offset());
        std::string name = in.identifier();
        if (name == "Id" || name == "Pi") in.fail_at(at, "'" + name + "' is reserved");
        return TypeExpr::base(std::move(name));
    }
    in.expect("(");
    TypeExpr out;
    if (in.consume("->")) {
        TypeExpr a = read_type(in);
        out = TypeExpr::arrow(std::move(a), read_type(in));
    } else {
        const std::size_t at = (in.skip_ws(), in.offset());
        std::string head = in.identifier();
        if (head == "Id") {
            TypeExpr c = read_type(in);
            ProofTerm l = read_pt(in);
            out = TypeExpr::id(std::move(c), std::move(l), read_pt(in));
        } else if (head == "Pi") {
            std::string x = in.identifier();
            TypeExpr a = read_type(in);
            out = TypeExpr::pi(std::move(x), std::move(a), read_type(in));
        } else {
            in.fail_at(at, "unknown type former '" + head + "'");
        }
    }
    in.expect(")");
    return out;
}

Judgment read_judgment(Reader& in) {
    in.expect("(");
    const std::size_t at = (in.skip_ws(), in.offset());
    std::string head = read_tag(in);
    Judgment out;
    if (head == "is-type") {
        out = Judgment::is_type(read_type(in));
    } else if (head == "has") {
        ProofTerm t = read_pt(in);
        out = Judgment::typing(std::move(t), read_type(in));
    } else if (head == "eq") {
        ProofTerm l = read_pt(in);
        Path p = read_path(in);
        ProofTerm r = read_pt(in);
        out = Judgment::path_eq(std::move(l), std::move(p), std::move(r), read_type(in));
    } else {
        in.fail_at(at, "unknown judgment form '" + head + "'");
    }
    in.expect(")");
    return out;
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Derivation read_derivation(Reader& in, std::string_view text) {
    in.skip_ws();
    const std::size_t start = in.offset();
    in.expect("(");
    const std::size_t kw = (in.skip_ws(), in.offset());
    if (in.identifier() != "rule") in.fail_at(kw, "expected 'rule'");
    const std::size_t tag_at = (in.skip_ws(), in.offset());
    std::string tag = read_tag(in);
    auto ra = rule_from_tag(tag);
    if (!ra) in.fail_at(tag_at, "unknown rule tag '" + tag + "'");

    Derivation d;
    d.rule = ra->first;
    d.axiom = ra->second;
    std::tie(d.line, d.column) = line_col(text, start);
    bool have_conclusion = false;
    while (!in.consume(")")) {
        in.expect("(");
        const std::size_t at = (in.skip_ws(), in.offset());
        std::string field = in.identifier();
        if (field == "label") {
            d.label = in.identifier();
            in.expect(")");
        } else if (field == "conclusion") {
            if (have_conclusion) in.fail_at(at, "duplicate conclusion");
            in.skip_ws();
            d.conclusion = read_judgment(in);
            have_conclusion = true;
            in.expect(")");
        } else if (field == "premises") {
            while (!in.consume(")")) d.premises.push_back(read_derivation(in, text));
        } else if (field == "discharge") {
            while (!in.consume(")")) d.discharged.push_back(in.identifier());
        } else {
            in.fail_at(at, "unknown field '" + field + "'");
        }
        if (in.at_end()) in.fail("unterminated rule");
    }
    if (!have_conclusion) in.fail_at(start, "rule without a conclusion");
    return d;
}

template <class F>
auto whole(std::string_view text, F read) {
    Reader in(text);
    try {
        auto v = read(in);
        if (!in.at_end()) in.fail("unexpected trailing input");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        in.fail(std::string(to_string(e.kind())) + ": " + e.what());
    }
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
    return whole(text, [&](Reader& in) { return read_derivation(in, text); });
}

ProofTerm parse_proof_term(std::string_view text) {
    return whole(text, [](Reader& in) { return read_pt(in); });
}

TypeExpr parse_type(std::string_view text) {
    return whole(text, [](Reader& in) { return read_type(in); });
}

Judgment parse_judgment(std::string_view text) {
    return whole(text, [](Reader& in) { return read_judgment(in); });
}

}  // namespace cpath
