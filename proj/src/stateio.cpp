#include "qtau/stateio.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qtau {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view s) {
    // from_chars rejects a leading '+'; the format allows it for imag parts.
    std::string_view body = s;
    if (!body.empty() && body.front() == '+')
        body.remove_prefix(1);
    double value = 0.0;
    const char* begin = body.data();
    const char* end = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || body.empty())
        throw ParseError("bad number '" + std::string(s) + "'");
    return value;
}

} // namespace

std::string format_complex(Complex z) {
    std::string out = format_double(z.real());
    const double im = z.imag();
    if (std::signbit(im)) {
        out += '-';
        out += format_double(-im);
    } else {
        out += '+';
        out += format_double(im);
    }
    out += 'i';
    return out;
}

Complex parse_complex(std::string_view token) {
    if (token.empty())
        throw ParseError("empty complex token");
    if (token.back() != 'i') {
        // plain real
        return {parse_double(token), 0.0};
    }
    std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last '+'/'-' that is not a leading sign and not an
    // exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        const char c = body[p];
        if ((c == '+' || c == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string_view::npos)
        throw ParseError("complex token '" + std::string(token) +
                         "' lacks a real part separator");
    const double re = parse_double(body.substr(0, split));
    std::string_view imag_part = body.substr(split);
    double im;
    if (imag_part == "+")
        im = 1.0;
    else if (imag_part == "-")
        im = -1.0;
    else
        im = parse_double(imag_part);
    return {re, im};
}

namespace {

struct Token {
    std::string_view text;
    std::size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '\n') {
            ++line;
            ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            std::size_t end = pos;
            while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])))
                ++end;
            tokens.push_back({text.substr(pos, end - pos), line});
            pos = end;
        }
    }
    return tokens;
}

Complex parse_complex_at(const Token& t) {
    try {
        return parse_complex(t.text);
    } catch (const ParseError&) {
        parse_fail(t.line, "bad complex entry '" + std::string(t.text) + "'");
    }
}

} // namespace

ParsedState parse_state_text(std::string_view text) {
    // Header occupies the first line; everything after is entries.
    const std::size_t header_end = text.find('\n');
    const std::string_view header =
        header_end == std::string_view::npos ? text : text.substr(0, header_end);
    const std::vector<Token> head = tokenize(header);
    if (head.empty())
        parse_fail(1, "missing header");
    const std::string_view kind = head.front().text;
    if (kind != "density" && kind != "pure")
        parse_fail(1, "header must start with 'density' or 'pure', got '" +
                          std::string(kind) + "'");
    if (head.size() < 3)
        parse_fail(1, "header needs at least two subsystem dimensions");
    std::vector<std::size_t> factors;
    for (std::size_t t = 1; t < head.size(); ++t) {
        double v = 0.0;
        try {
            v = parse_double(head[t].text);
        } catch (const ParseError&) {
            parse_fail(1, "bad subsystem dimension '" + std::string(head[t].text) + "'");
        }
        if (v < 2.0 || v != std::floor(v))
            parse_fail(1, "bad subsystem dimension '" + std::string(head[t].text) + "'");
        factors.push_back(static_cast<std::size_t>(v));
    }
    const DimsSpec dims{factors};
    const std::size_t side = dims.total();

    // The body substring keeps the header's newline, so tokenize() already
    // yields absolute file line numbers for the entries.
    const std::string_view body =
        header_end == std::string_view::npos ? std::string_view{} : text.substr(header_end);
    std::vector<Token> entries = tokenize(body);

    const std::size_t expected = kind == "density" ? side * side : side;
    if (entries.size() != expected) {
        const std::size_t where = entries.empty() ? 2 : entries.back().line;
        parse_fail(where, "expected " + std::to_string(expected) + " entries, found " +
                              std::to_string(entries.size()));
    }

    if (kind == "pure") {
        std::vector<Complex> amps(side);
        for (std::size_t n = 0; n < side; ++n)
            amps[n] = parse_complex_at(entries[n]);
        return PureState(dims, std::move(amps));
    }
    Matrix m(side, side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c)
            m(r, c) = parse_complex_at(entries[r * side + c]);
    return DensityMatrix(dims, std::move(m));
}

ParsedState parse_state_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open state file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_state_text(buffer.str());
}

namespace {

std::string header_line(const char* kind, const DimsSpec& dims) {
    std::string out = kind;
    for (std::size_t f : dims.factors()) {
        out += ' ';
        out += std::to_string(f);
    }
    out += '\n';
    return out;
}

} // namespace

std::string write_state_text(const DensityMatrix& rho) {
    std::string out = header_line("density", rho.dims());
    const std::size_t side = rho.side();
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            if (c)
                out += ' ';
            out += format_complex(rho.mat()(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string write_state_text(const PureState& psi) {
    std::string out = header_line("pure", psi.dims());
    for (std::size_t n = 0; n < psi.amps().size(); ++n) {
        if (n)
            out += ' ';
        out += format_complex(psi.amps()[n]);
    }
    out += '\n';
    return out;
}

namespace {
void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write state file '" + path.string() + "'");
    out << text;
}
} // namespace

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
    write_text(path, write_state_text(rho));
}

void write_state_file(const std::filesystem::path& path, const PureState& psi) {
    write_text(path, write_state_text(psi));
}

} // namespace qtau
