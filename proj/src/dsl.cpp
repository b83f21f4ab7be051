#include "polyuni/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "polyuni/error.hpp"

namespace polyuni {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

    HoloFunction function()
    {
        auto f = expr();
        expect_end();
        return f;
    }

    PolydiskAutomorphism automorphism()
    {
        auto phi = autospec();
        expect_end();
        return phi;
    }

    template <typename T, typename Item>
    std::vector<T> list(Item item)
    {
        expect('[');
        std::vector<T> out;
        skip_ws();
        if (peek() == ']') {
            ++pos_;
            return out;
        }
        out.push_back(item());
        while (accept(',')) out.push_back(item());
        expect(']');
        return out;
    }

    double real()
    {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = peek() == '-';
            ++pos_;
            skip_ws();
        }
        double v = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr == first) fail("expected a real number", start);
        pos_ += std::size_t(ptr - first);
        if (!std::isfinite(v)) fail("non-finite number", start);
        return negative ? -v : v;
    }

    Complex complex()
    {
        const double re = real();
        skip_ws();
        const char sign = peek();
        if (sign != '+' && sign != '-') fail("expected '+' or '-' in complex literal");
        ++pos_;
        skip_ws();
        if (peek() == '+' || peek() == '-') fail("unexpected sign in imaginary part");
        double im = real();
        expect('i');
        return {re, sign == '-' ? -im : im};
    }

    std::int64_t integer()
    {
        skip_ws();
        const std::size_t start = pos_;
        std::int64_t v = 0;
        const char* first = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), v);
        if (ec != std::errc() || ptr == first) fail("expected an integer", start);
        pos_ += std::size_t(ptr - first);
        return v;
    }

    void expect_end()
    {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

private:
    HoloFunction expr()
    {
        std::vector<HoloFunction> factors;
        factors.push_back(factor());
        while (accept('*')) factors.push_back(factor());
        return factors.size() == 1 ? factors.front() : HoloFunction::product(std::move(factors));
    }

    HoloFunction factor()
    {
        auto f = primary();
        while (accept('^')) {
            const std::size_t at = pos_;
            const auto m = integer();
            if (m < 1 || m > std::numeric_limits<unsigned>::max()) fail_validity("exponent must be a positive integer", at);
            f = HoloFunction::power(std::move(f), unsigned(m));
        }
        return f;
    }

    HoloFunction primary()
    {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('(')) {
            auto f = expr();
            expect(')');
            return f;
        }
        const auto word = identifier();
        if (word == "const") {
            const auto c = complex();
            return guarded(at, [&] { return HoloFunction::constant(n_, c); });
        }
        if (word == "z") {
            const auto j = coordinate_suffix();
            return HoloFunction::coordinate(n_, j);
        }
        if (word == "blaschke") {
            expect('(');
            const auto a = complex();
            expect(',');
            const auto t = real();
            expect(')');
            const auto j = coordinate_suffix();
            return guarded(at, [&] { return HoloFunction::blaschke(n_, MobiusFactor(a, t), j); });
        }
        if (word == "compose") {
            expect('(');
            auto f = expr();
            expect(',');
            auto phi = autospec();
            expect(')');
            return HoloFunction::composed(std::move(phi), std::move(f));
        }
        fail(word.empty() ? "expected an expression" : "unknown keyword '" + std::string(word) + "'", at);
    }

    PolydiskAutomorphism autospec()
    {
        skip_ws();
        const std::size_t at = pos_;
        if (identifier() != "auto") fail("expected 'auto'", at);
        expect('{');
        key("p");
        auto p = list<std::int64_t>([&] { return integer(); });
        expect(',');
        key("a");
        auto a = list<Complex>([&] { return complex(); });
        expect(',');
        key("t");
        auto t = list<double>([&] { return real(); });
        expect('}');
        if (p.size() != n_ || a.size() != n_ || t.size() != n_)
            fail_validity("automorphism lists must have length " + std::to_string(n_), at);
        return guarded(at, [&] {
            std::vector<std::size_t> perm;
            std::vector<MobiusFactor> factors;
            for (std::size_t j = 0; j < n_; ++j) {
                if (p[j] < 1 || std::size_t(p[j]) > n_) throw Error(ErrorCode::ValidityError, "permutation entry out of range");
                perm.push_back(std::size_t(p[j] - 1));
                factors.emplace_back(a[j], t[j]);
            }
            return PolydiskAutomorphism(std::move(perm), std::move(factors));
        });
    }

    std::size_t coordinate_suffix()
    {
        expect('[');
        const std::size_t at = pos_;
        const auto j = integer();
        expect(']');
        if (j < 1 || std::size_t(j) > n_)
            fail_validity("coordinate index " + std::to_string(j) + " out of range 1.." + std::to_string(n_), at);
        return std::size_t(j - 1);
    }

    void key(std::string_view name)
    {
        skip_ws();
        const std::size_t at = pos_;
        if (identifier() != name) fail("expected '" + std::string(name) + "='", at);
        expect('=');
    }

    std::string_view identifier()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    template <typename Fn>
    auto guarded(std::size_t at, Fn&& fn) -> decltype(fn())
    {
        try {
            return fn();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ValidityError) fail_validity(e.what(), at);
            throw;
        }
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string location(std::size_t at) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return "line " + std::to_string(line) + ", column " + std::to_string(col);
    }

    [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at)
    {
        throw Error(ErrorCode::ParseError, location(at) + ": " + msg);
    }
    [[noreturn]] void fail_validity(const std::string& msg, std::size_t at)
    {
        throw Error(ErrorCode::ValidityError, location(at) + ": " + msg);
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

}  // namespace

HoloFunction parse_function(std::string_view text, std::size_t n)
{
    if (n == 0) throw Error(ErrorCode::ValidityError, "dimension must be positive");
    return Parser(text, n).function();
}

PolydiskAutomorphism parse_automorphism(std::string_view text, std::size_t n)
{
    if (n == 0) throw Error(ErrorCode::ValidityError, "dimension must be positive");
    return Parser(text, n).automorphism();
}

std::vector<Complex> parse_complex_list(std::string_view text)
{
    Parser p(text, 0);
    auto v = p.list<Complex>([&] { return p.complex(); });
    p.expect_end();
    return v;
}

std::vector<double> parse_real_list(std::string_view text)
{
    Parser p(text, 0);
    auto v = p.list<double>([&] { return p.real(); });
    p.expect_end();
    return v;
}

std::vector<std::int64_t> parse_integer_list(std::string_view text)
{
    Parser p(text, 0);
    auto v = p.list<std::int64_t>([&] { return p.integer(); });
    p.expect_end();
    return v;
}

std::vector<std::size_t> parse_index_list(std::string_view text)
{
    std::vector<std::size_t> out;
    for (auto v : parse_integer_list(text)) {
        if (v < 1) throw Error(ErrorCode::ValidityError, "indices are 1-based");
        out.push_back(std::size_t(v - 1));
    }
    return out;
}

Complex parse_complex(std::string_view text)
{
    Parser p(text, 0);
    auto c = p.complex();
    p.expect_end();
    return c;
}

std::string format_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Complex z)
{
    const double im = z.imag();
    return format_real(z.real()) + (std::signbit(im) ? "-" : "+") + format_real(std::abs(im)) + "i";
}

std::string to_dsl(const PolydiskAutomorphism& phi)
{
    std::string p, a, t;
    for (std::size_t j = 0; j < phi.dimension(); ++j) {
        const char* sep = j ? ", " : "";
        p += sep + std::to_string(phi.permutation()[j] + 1);
        a += sep + format_complex(phi.factors()[j].alpha());
        t += sep + format_real(phi.factors()[j].theta());
    }
    return "auto{p=[" + p + "], a=[" + a + "], t=[" + t + "]}";
}

std::string to_dsl(const HoloFunction& f)
{
    const auto wrapped = [](const HoloFunction& g) {
        return g.as<node::Product>() ? "(" + to_dsl(g) + ")" : to_dsl(g);
    };
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Constant>) return "const " + format_complex(x.value);
            else if constexpr (std::is_same_v<T, node::Coordinate>) return "z[" + std::to_string(x.index + 1) + "]";
            else if constexpr (std::is_same_v<T, node::Blaschke>)
                return "blaschke(" + format_complex(x.factor.alpha()) + ", " + format_real(x.factor.theta()) + ")[" +
                       std::to_string(x.coordinate + 1) + "]";
            else if constexpr (std::is_same_v<T, node::Product>) {
                std::string s;
                for (std::size_t i = 0; i < x.children.size(); ++i) s += (i ? " * " : "") + wrapped(x.children[i]);
                return s;
            } else if constexpr (std::is_same_v<T, node::Composed>)
                return "compose(" + to_dsl(x.outer) + ", " + to_dsl(x.inner) + ")";
            else return wrapped(x.base) + "^" + std::to_string(x.exponent);
        },
        f.node().v);
}

}  // namespace polyuni
