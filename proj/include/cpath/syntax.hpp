#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cpath/path.hpp"
#include "cpath/term.hpp"

namespace cpath {

// Character cursor with line/column tracking. Whitespace and `;` line
// comments are skipped between tokens.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    void skip_ws();
    bool at_end();
    // Next significant character, or '\0' at end of input.
    char peek();
    // Whether the upcoming text starts with `lit` (after whitespace).
    bool looking_at(std::string_view lit);
    bool consume(std::string_view lit);
    void expect(std::string_view lit);
    bool looking_at_identifier();
    std::string identifier();

    std::size_t offset() const noexcept { return pos_; }
    void rewind(std::size_t offset) noexcept { pos_ = offset; }

    [[noreturn]] void fail(const std::string& message) const;
    [[noreturn]] void fail_at(std::size_t offset, const std::string& message) const;

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

// term  := item { item }          application, left associative
// item  := ident | \ident.item | λident.item | ( term )
// A lambda body is a single item: (\x.(f x)) abstracts an application,
// (\x.f x) applies (\x.f) to x.
Term read_term(Reader& in);
Term read_term_item(Reader& in);

// path := rho[term] | rho{path} | beta[term => term] | eta[...] | alpha[...]
//       | #ident: end -> end | sigma(path) | tau(path, path) | xi(ident.path)
//       | mu(term, path) | nu(path, term) | <rule>{path => path}
// end  := item | {path}
Path read_path(Reader& in);
Endpoint read_endpoint(Reader& in);

// Whole-input parsers; throw ParseError (with line and column) on any
// malformed or ill-formed input.
Term parse_term(std::string_view text);
Path parse_path(std::string_view text);

}  // namespace cpath
