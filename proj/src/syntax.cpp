#include "cpath/syntax.hpp"

#include <cctype>
#include <vector>

#include "cpath/error.hpp"
#include "cpath/rewrite.hpp"

namespace cpath {

namespace {

constexpr std::string_view kLambda = "\xCE\xBB";  // λ

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

void Reader::skip_ws() {
    while (pos_ < text_.size()) {
        char c = text_[pos_];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos_;
        } else if (c == ';') {
            while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        } else {
            break;
        }
    }
}

bool Reader::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

char Reader::peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Reader::looking_at(std::string_view lit) {
    skip_ws();
    return text_.substr(pos_, lit.size()) == lit;
}

bool Reader::consume(std::string_view lit) {
    if (!looking_at(lit)) return false;
    pos_ += lit.size();
    return true;
}

void Reader::expect(std::string_view lit) {
    if (!consume(lit)) fail("expected '" + std::string(lit) + "'");
}

bool Reader::looking_at_identifier() { return ident_start(peek()); }

std::string Reader::identifier() {
    if (!looking_at_identifier()) fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
}

void Reader::fail(const std::string& message) const { fail_at(pos_, message); }

void Reader::fail_at(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
        if (text_[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ParseError(message, line, col);
}

namespace {

bool starts_item(Reader& in) {
    char c = in.peek();
    return ident_start(c) || c == '(' || c == '\\' || in.looking_at(kLambda);
}

}  // namespace

Term read_term_item(Reader& in) {
    if (in.consume("\\") || in.consume(kLambda)) {
        std::string binder = in.identifier();
        in.expect(".");
        return Term::abs(std::move(binder), read_term_item(in));
    }
    if (in.consume("(")) {
        Term t = read_term(in);
        in.expect(")");
        return t;
    }
    if (in.looking_at_identifier()) return Term::var(in.identifier());
    in.fail("expected a term");
}

Term read_term(Reader& in) {
    Term t = read_term_item(in);
    while (starts_item(in)) t = Term::app(std::move(t), read_term_item(in));
    return t;
}

namespace {

Path read_basic(Reader& in, PathKind kind, std::size_t start) {
    Term from = read_term(in);
    in.expect("=>");
    Term to = read_term(in);
    in.expect("]");
    if (kind == PathKind::Alpha) {
        if (!alpha_eq(from, to)) in.fail_at(start, "alpha step between terms that are not alpha-equivalent");
        return mk_alpha(std::move(from), std::move(to));
    }
    RedexKind rk = kind == PathKind::Beta ? RedexKind::Beta : RedexKind::Eta;
    for (const RedexSite& s : contraction_sites(from))
        if (s.kind == rk && alpha_eq(s.result, to))
            return kind == PathKind::Beta ? mk_beta(from, s.position) : mk_eta(from, s.position);
    in.fail_at(start, std::string(to_string(kind)) + " step: " + to_string(to) +
                          " is not a one-step contraction of " + to_string(from));
}

Path read_path_inner(Reader& in) {
    std::size_t start = (in.skip_ws(), in.offset());
    if (in.consume("#")) {
        std::string name = in.identifier();
        in.expect(":");
        Endpoint src = read_endpoint(in);
        in.expect("->");
        Endpoint tgt = read_endpoint(in);
        return mk_atom(std::move(name), std::move(src), std::move(tgt));
    }
    if (!in.looking_at_identifier()) in.fail("expected a path");
    std::string word = in.identifier();
    if (word == "rho") {
        if (in.consume("{")) {
            Path p = read_path(in);
            in.expect("}");
            return mk_rho(std::move(p));
        }
        in.expect("[");
        Term t = read_term(in);
        in.expect("]");
        return mk_rho(std::move(t));
    }
    if (word == "beta" || word == "eta" || word == "alpha") {
        in.expect("[");
        PathKind k = word == "beta" ? PathKind::Beta : word == "eta" ? PathKind::Eta : PathKind::Alpha;
        return read_basic(in, k, start);
    }
    if (word == "sigma") {
        in.expect("(");
        Path p = read_path(in);
        in.expect(")");
        return mk_sigma(std::move(p));
    }
    if (word == "tau") {
        in.expect("(");
        Path p = read_path(in);
        in.expect(",");
        Path q = read_path(in);
        in.expect(")");
        return mk_tau(std::move(p), std::move(q));
    }
    if (word == "xi") {
        in.expect("(");
        std::string binder = in.identifier();
        in.expect(".");
        Path body = read_path(in);
        in.expect(")");
        return mk_xi(std::move(binder), std::move(body));
    }
    if (word == "mu") {
        in.expect("(");
        Term f = read_term(in);
        in.expect(",");
        Path p = read_path(in);
        in.expect(")");
        return mk_mu(std::move(f), std::move(p));
    }
    if (word == "nu") {
        in.expect("(");
        Path p = read_path(in);
        in.expect(",");
        Term a = read_term(in);
        in.expect(")");
        return mk_nu(std::move(p), std::move(a));
    }
    if (auto rule = rule_from_name(word)) {
        in.expect("{");
        Path from = read_path(in);
        in.expect("=>");
        Path to = read_path(in);
        in.expect("}");
        return mk_rule_step(*rule, std::move(from), std::move(to));
    }
    in.fail_at(start, "unknown path constructor '" + word + "'");
}

}  // namespace

Path read_path(Reader& in) {
    std::size_t start = (in.skip_ws(), in.offset());
    try {
        return read_path_inner(in);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        // Construction errors (endpoint mismatches, bad rule steps) become
        // parse errors located at the offending constructor.
        in.fail_at(start, std::string(to_string(e.kind())) + ": " + e.what());
    }
}

Endpoint read_endpoint(Reader& in) {
    if (in.consume("{")) {
        Path p = read_path(in);
        in.expect("}");
        return p;
    }
    return read_term_item(in);
}

Term parse_term(std::string_view text) {
    Reader in(text);
    Term t = read_term(in);
    if (!in.at_end()) in.fail("unexpected trailing input");
    return t;
}

Path parse_path(std::string_view text) {
    Reader in(text);
    Path p = read_path(in);
    if (!in.at_end()) in.fail("unexpected trailing input");
    return p;
}

}  // namespace cpath
