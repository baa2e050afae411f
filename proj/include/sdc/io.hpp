#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sdc/clifford_weil.hpp"
#include "sdc/code.hpp"
#include "sdc/invariants.hpp"
#include "sdc/molien.hpp"
#include "sdc/presets.hpp"

namespace sdc {

/// Every document is a JSON object; keys keep their insertion order on output.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

/// Cursor into a parsed document that reports errors at its JSON pointer.
class DocNode {
public:
    DocNode(const Json& node, std::string path) : node_(&node), path_(std::move(path)) {}

    [[nodiscard]] const Json& json() const { return *node_; }
    [[nodiscard]] const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError((path_.empty() ? std::string("/") : path_) + ": " + message);
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_->is_object() && node_->contains(key); }

    [[nodiscard]] DocNode at(const std::string& key) const {
        if (!node_->is_object()) fail("expected an object");
        if (!node_->contains(key)) fail("missing key '" + key + "'");
        return {node_->at(key), path_ + "/" + key};
    }
    [[nodiscard]] DocNode at(std::size_t i) const {
        if (!node_->is_array()) fail("expected an array");
        if (i >= node_->size()) fail("index " + std::to_string(i) + " out of range");
        return {node_->at(i), path_ + "/" + std::to_string(i)};
    }
    [[nodiscard]] std::size_t size() const {
        if (!node_->is_array()) fail("expected an array");
        return node_->size();
    }

    [[nodiscard]] std::int64_t integer() const {
        if (!node_->is_number_integer()) fail("expected an integer");
        return node_->get<std::int64_t>();
    }
    [[nodiscard]] int small_int(std::int64_t lo, std::int64_t hi) const {
        const std::int64_t v = integer();
        if (v < lo || v > hi) fail("value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(v);
    }
    [[nodiscard]] std::string string() const {
        if (!node_->is_string()) fail("expected a string");
        return node_->get<std::string>();
    }
    /// An integer or a string such as "3/4".
    [[nodiscard]] Rational rational() const {
        if (node_->is_number_integer()) return Rational(static_cast<long>(node_->get<std::int64_t>()));
        if (!node_->is_string()) fail("expected a rational number (integer or \"p/q\" string)");
        try {
            return parse_rational(node_->get<std::string>());
        } catch (const Error&) {
            fail("not a rational number: '" + node_->get<std::string>() + "'");
        }
    }

    /// Index into `labels`, given as an id or as one of the labels.
    [[nodiscard]] int element(const std::vector<std::string>& labels, const std::string& what) const {
        if (node_->is_string()) {
            const std::string s = node_->get<std::string>();
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == s) return static_cast<int>(i);
            fail("unknown " + what + " '" + s + "'");
        }
        return small_int(0, static_cast<std::int64_t>(labels.size()) - 1);
    }

    [[nodiscard]] Table table(int rows, int cols, int range) const {
        if (static_cast<int>(size()) != rows) fail("expected " + std::to_string(rows) + " rows");
        Table t;
        for (int r = 0; r < rows; ++r) {
            const DocNode row = at(static_cast<std::size_t>(r));
            if (static_cast<int>(row.size()) != cols) row.fail("expected " + std::to_string(cols) + " entries");
            std::vector<int> out;
            for (int c = 0; c < cols; ++c) out.push_back(row.at(static_cast<std::size_t>(c)).small_int(0, range - 1));
            t.push_back(std::move(out));
        }
        return t;
    }

    [[nodiscard]] std::vector<std::string> strings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).string());
        return out;
    }

private:
    const Json* node_;
    std::string path_;
};

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
inline Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
    return Json(z.get_str());
}

inline Integer integer_from(const DocNode& n) {
    if (n.json().is_number_integer()) return Integer(static_cast<long>(n.json().get<std::int64_t>()));
    Integer z;
    if (!n.json().is_string() || z.set_str(n.json().get<std::string>(), 10) != 0) n.fail("expected an integer");
    return z;
}

inline void check_schema(const DocNode& doc, const std::string& kind) {
    if (!doc.json().is_object()) doc.fail("expected an object");
    if (doc.has("schema_version") && doc.at("schema_version").integer() != kSchemaVersion)
        doc.at("schema_version").fail("unsupported schema_version (this build reads " + std::to_string(kSchemaVersion) + ")");
    if (doc.has("kind") && doc.at("kind").string() != kind) doc.at("kind").fail("expected a '" + kind + "' document");
}

inline Json header(const std::string& kind) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

}  // namespace detail

/// Rational as a JSON integer when integral, else as a "p/q" string.
inline Json rational_json(const Rational& q) {
    if (is_integer(q)) return detail::integer_json(q.get_num());
    return Json(q.get_str());
}

/// Parses JSON text; syntax errors carry the byte position.
inline Json parse_json(const std::string& text, const std::string& source = "input") {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

namespace detail {

inline void dump_into(const Json& j, int indent, std::string& out) {
    std::string flat = j.dump();
    if (!j.is_structured() || j.empty() || flat.size() + static_cast<std::size_t>(indent) <= 100) {
        out += flat;
        return;
    }
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    out += j.is_object() ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        out += first ? "" : ",\n";
        first = false;
        out += pad;
        if (j.is_object()) out += Json(it.key()).dump() + ": ";
        dump_into(it.value(), indent + 2, out);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + (j.is_object() ? "}" : "]");
}

}  // namespace detail

/// Indented text in which any array or object that fits on one line stays on one line.
inline std::string dump_document(const Json& j) {
    std::string out;
    detail::dump_into(j, 0, out);
    return out + "\n";
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

/// Parses the text printed by Cyclotomic::to_string, e.g. "z8 - z8^3",
/// "-1/2", "2*z8^3". Also accepts sqrt(n), i, parentheses and division.
inline Cyclotomic parse_cyclotomic(const std::string& text) {
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError("cyclotomic '" + text + "' at position " + std::to_string(i) + ": " + msg);
    };
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto digits = [&]() -> std::int64_t {
        const std::size_t j = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == j) fail("expected digits");
        if (i - j > 15) fail("number too long");
        return std::stoll(text.substr(j, i - j));
    };
    std::function<Cyclotomic()> sum;
    auto factor = [&]() -> Cyclotomic {
        skip();
        if (i >= text.size()) fail("unexpected end");
        const char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t j = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            Integer z(text.substr(j, i - j));
            return Cyclotomic(Rational(z));
        }
        if (c == 'z') {
            ++i;
            const std::int64_t L = digits();
            if (L < 1) fail("conductor must be positive");
            std::int64_t k = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                const bool neg = i < text.size() && text[i] == '-';
                if (neg) ++i;
                k = digits();
                if (neg) k = -k;
            }
            return root_of_unity(L, k);
        }
        if (text.compare(i, 5, "sqrt(") == 0) {
            i += 5;
            skip();
            const std::int64_t n = digits();
            skip();
            if (i >= text.size() || text[i] != ')') fail("expected ')'");
            ++i;
            return sqrt_nat(n);
        }
        if (c == 'i') {
            ++i;
            return root_of_unity(4, 1);
        }
        if (c == '(') {
            ++i;
            Cyclotomic v = sum();
            skip();
            if (i >= text.size() || text[i] != ')') fail("expected ')'");
            ++i;
            return v;
        }
        fail(std::string("unexpected character '") + c + "'");
        return {};
    };
    auto term = [&]() -> Cyclotomic {
        Cyclotomic v = factor();
        while (true) {
            skip();
            if (i >= text.size()) break;
            const char c = text[i];
            if (c == '*') {
                ++i;
                v = v * factor();
            } else if (c == '/') {
                ++i;
                const Cyclotomic d = factor();
                if (d.is_zero()) fail("division by zero");
                v = v * d.inverse();
            } else if (c == 'z' || c == 'i' || c == '(' || c == 's') {
                v = v * factor();
            } else {
                break;
            }
        }
        return v;
    };
    sum = [&]() -> Cyclotomic {
        skip();
        Cyclotomic v;
        bool first = true;
        while (true) {
            skip();
            if (i >= text.size() || text[i] == ')') break;
            bool neg = false;
            if (text[i] == '+' || text[i] == '-') {
                neg = text[i] == '-';
                ++i;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            const Cyclotomic t = term();
            v = neg ? v - t : v + t;
            first = false;
        }
        if (first) fail("empty expression");
        return v;
    };
    Cyclotomic v = sum();
    skip();
    if (i != text.size()) fail("unexpected ')'");
    return v;
}

/// {"conductor": L, "terms": [[exponent, numerator, denominator], ...]}.
inline Json cyclotomic_json(const Cyclotomic& c) {
    Json j;
    j["conductor"] = c.conductor();
    Json terms = Json::array();
    for (const auto& [k, q] : c.terms()) terms.push_back(Json::array({k, detail::integer_json(q.get_num()), detail::integer_json(q.get_den())}));
    j["terms"] = terms;
    return j;
}

/// Reads the structured form, a bare integer, or text accepted by parse_cyclotomic.
inline Cyclotomic cyclotomic_from(const detail::DocNode& n) {
    const Json& j = n.json();
    if (j.is_number_integer()) return Cyclotomic(Rational(static_cast<long>(j.get<std::int64_t>())));
    if (j.is_string()) {
        try {
            return parse_cyclotomic(j.get<std::string>());
        } catch (const ParseError& e) {
            n.fail(e.what());
        }
    }
    if (!j.is_object()) n.fail("expected a cyclotomic number");
    const std::int64_t L = n.at("conductor").integer();
    if (L < 1 || L > 100000) n.at("conductor").fail("conductor out of range");
    const detail::DocNode terms = n.at("terms");
    std::vector<Rational> coeffs(static_cast<std::size_t>(L));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const detail::DocNode term = terms.at(t);
        if (term.size() != 3) term.fail("expected [exponent, numerator, denominator]");
        const std::int64_t k = term.at(0).integer();
        const Integer num = detail::integer_from(term.at(1)), den = detail::integer_from(term.at(2));
        if (den == 0) term.at(2).fail("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        coeffs[static_cast<std::size_t>(arith::mod(k, L))] += q;
    }
    return Cyclotomic::from_powers(L, coeffs);
}

inline Json matrix_json(const CycMatrix& M) {
    Json rows = Json::array();
    for (int r = 0; r < M.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < M.dim(); ++c) row.push_back(cyclotomic_json(M(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline CycMatrix matrix_from(const detail::DocNode& n) {
    const std::size_t dim = n.size();
    std::vector<std::vector<Cyclotomic>> rows;
    for (std::size_t r = 0; r < dim; ++r) {
        const detail::DocNode row = n.at(r);
        if (row.size() != dim) row.fail("matrix must be square");
        std::vector<Cyclotomic> out;
        for (std::size_t c = 0; c < dim; ++c) out.push_back(cyclotomic_from(row.at(c)));
        rows.push_back(std::move(out));
    }
    return CycMatrix::from_rows(rows);
}

namespace detail {

/// What a "ring" entry described, with the data the closed-form tags need.
struct RingSpec {
    std::optional<FiniteRing> ring;
    std::vector<std::string> labels;
    int one = 1;
    int modulus = 0;                    // Z/n
    std::optional<FiniteField> field;   // GF(p^k)
};

inline RingSpec read_ring(const DocNode& n) {
    RingSpec s;
    if (n.has("modulus")) {
        const int m = n.at("modulus").small_int(2, 256);
        s.ring = integers_mod(m);
        s.modulus = m;
    } else if (n.has("field")) {
        const DocNode f = n.at("field");
        const int p = f.at("p").small_int(2, 251);
        if (!arith::is_prime(p)) f.at("p").fail("p must be prime");
        const int k = f.has("k") ? f.at("k").small_int(1, 8) : 1;
        std::vector<int> reduction;
        if (k > 1) {
            const DocNode red = f.at("reduction");
            if (static_cast<int>(red.size()) != k) red.fail("expected " + std::to_string(k) + " coefficients");
            for (std::size_t i = 0; i < red.size(); ++i) reduction.push_back(red.at(i).small_int(0, p - 1));
        }
        const std::string gen = f.has("generator") ? f.at("generator").string() : "a";
        try {
            s.field = galois_field(p, k, reduction, gen);
        } catch (const Error& e) {
            f.fail(e.what());
        }
        s.ring = s.field->ring;
        if (k == 1) s.modulus = p;
    } else {
        s.labels = n.at("labels").strings();
        const int size = static_cast<int>(s.labels.size());
        if (size < 1) n.at("labels").fail("ring has no elements");
        if (n.has("add") || n.has("mul")) {
            FiniteRing R;
            R.labels = s.labels;
            R.add = n.at("add").table(size, size, size);
            R.mul = n.at("mul").table(size, size, size);
            R.zero = n.has("zero") ? n.at("zero").element(s.labels, "ring element") : 0;
            R.one = n.at("one").element(s.labels, "ring element");
            R.finalize();
            s.ring = R;
        } else {
            s.one = n.at("one").element(s.labels, "ring element");
            return s;
        }
    }
    s.labels = s.ring->labels;
    s.one = s.ring->one;
    return s;
}

/// V = R^rank with ids in lexicographic order, first coordinate most significant.
inline Module free_module(const FiniteRing& R, int rank) {
    const int q = R.size();
    int n = 1;
    for (int i = 0; i < rank; ++i) n *= q;
    auto digit = [&](int v, int i) {
        for (int j = rank - 1; j > i; --j) v /= q;
        return v % q;
    };
    auto compose = [&](const std::vector<int>& d) {
        int v = 0;
        for (int x : d) v = v * q + x;
        return v;
    };
    Module V;
    for (int v = 0; v < n; ++v) {
        if (rank == 1) {
            V.labels.push_back(R.labels[static_cast<std::size_t>(v)]);
            continue;
        }
        std::string l = "(";
        for (int i = 0; i < rank; ++i) l += (i ? "," : "") + R.labels[static_cast<std::size_t>(digit(v, i))];
        V.labels.push_back(l + ")");
    }
    V.add.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    V.action.assign(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<int> d(static_cast<std::size_t>(rank));
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
            for (int i = 0; i < rank; ++i) d[static_cast<std::size_t>(i)] = R.plus(digit(v, i), digit(w, i));
            V.add[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = compose(d);
        }
        for (int r = 0; r < q; ++r) {
            for (int i = 0; i < rank; ++i) d[static_cast<std::size_t>(i)] = R.times(r, digit(v, i));
            V.action[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)] = compose(d);
        }
    }
    V.zero = 0;
    return V;
}

/// Coordinates of v in R^rank.
inline std::vector<int> coordinates(int v, int q, int rank) {
    std::vector<int> d(static_cast<std::size_t>(rank));
    for (int i = rank - 1; i >= 0; --i, v /= q) d[static_cast<std::size_t>(i)] = v % q;
    return d;
}

inline std::vector<std::vector<Rational>> beta_from_tag(const DocNode& n, const RingSpec& s, int rank, int size) {
    const std::string tag = n.string();
    std::vector<std::vector<Rational>> b(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size)));
    if (rank < 1) n.fail("closed-form beta needs a free module (module.rank)");
    const FiniteRing& R = *s.ring;
    std::function<Rational(int, int)> entry;
    if (tag == "product") {
        if (s.modulus == 0) n.fail("'product' needs a ring given by modulus or a prime field");
        entry = [&](int u, int v) { return make_rational(R.times(u, v), s.modulus); };
    } else if (tag == "trace" || tag == "trace-hermitian") {
        if (!s.field) n.fail("'" + tag + "' needs a ring given by a field spec");
        if (tag == "trace-hermitian" && s.field->k != 2) n.fail("'trace-hermitian' needs a quadratic field extension");
        const FiniteField& F = *s.field;
        const bool herm = tag == "trace-hermitian";
        entry = [&F, herm](int u, int v) { return make_rational(F.trace(F.ring.times(u, herm ? F.conj(v) : v)), F.p); };
    } else {
        n.fail("unknown beta tag '" + tag + "' (expected product, trace or trace-hermitian)");
    }
    for (int v = 0; v < size; ++v)
        for (int w = 0; w < size; ++w) {
            const auto dv = coordinates(v, R.size(), rank), dw = coordinates(w, R.size(), rank);
            Rational t = 0;
            for (int i = 0; i < rank; ++i) t += entry(dv[static_cast<std::size_t>(i)], dw[static_cast<std::size_t>(i)]);
            b[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = t;
        }
    return b;
}

/// Numerator of x modulo 1 over `level`; fails when the denominator does not divide it.
inline std::int64_t over_level(const Rational& x, std::int64_t level, const DocNode& where) {
    const Rational y = x * Rational(static_cast<long>(level));
    if (!is_integer(y)) where.fail("value " + x.get_str() + " is not a multiple of 1/" + std::to_string(level));
    if (!y.get_num().fits_slong_p()) where.fail("value out of range");
    return arith::mod(y.get_num().get_si(), level);
}

}  // namespace detail

/// FormRingDocument -> validated FormRing. Errors name the JSON pointer of the
/// offending entry.
inline FormRing read_form_ring(const Json& doc, const std::string& root = "") {
    using detail::DocNode;
    const DocNode d(doc, root);
    if (doc.is_string()) {
        try {
            return preset(doc.get<std::string>());
        } catch (const ParseError& e) {
            d.fail(e.what());
        }
    }
    detail::check_schema(d, "form_ring");
    if (d.has("preset")) {
        try {
            return preset(d.at("preset").string());
        } catch (const ParseError& e) {
            d.at("preset").fail(e.what());
        }
    }
    FormRing rho;
    rho.label = d.has("label") ? d.at("label").string() : "custom";
    const detail::RingSpec spec = detail::read_ring(d.at("ring"));
    rho.ring = spec.ring;
    rho.ring_labels = spec.labels;
    rho.ring_one = spec.one;
    const int nr = static_cast<int>(spec.labels.size());

    int rank = 0;
    if (!d.has("module") || d.at("module").has("rank")) {
        rank = d.has("module") ? d.at("module").at("rank").small_int(1, 8) : 1;
        if (!spec.ring) d.at("ring").fail("a free module needs ring tables");
        std::int64_t size = 1;
        for (int i = 0; i < rank; ++i) size *= spec.ring->size();
        if (size > 4096) d.at("module").at("rank").fail("module has more than 4096 elements");
        rho.module = detail::free_module(*spec.ring, rank);
    } else {
        const DocNode m = d.at("module");
        rho.module.labels = m.at("labels").strings();
        const int n = rho.module.size();
        if (n < 1) m.at("labels").fail("module has no elements");
        rho.module.add = m.at("add").table(n, n, n);
        rho.module.action = m.at("action").table(nr, n, n);
        rho.module.zero = m.has("zero") ? m.at("zero").element(rho.module.labels, "module element") : 0;
    }
    rho.module.finalize();
    const int n = rho.module.size();

    // beta and phi as rationals mod 1, converted to numerators once the level is known
    std::vector<std::vector<Rational>> beta;
    const DocNode b = d.at("beta");
    if (b.has("tag")) {
        beta = detail::beta_from_tag(b.at("tag"), spec, rank, n);
    } else {
        const DocNode t = b.at("table");
        if (static_cast<int>(t.size()) != n) t.fail("expected " + std::to_string(n) + " rows");
        for (int v = 0; v < n; ++v) {
            const DocNode row = t.at(static_cast<std::size_t>(v));
            if (static_cast<int>(row.size()) != n) row.fail("expected " + std::to_string(n) + " entries");
            std::vector<Rational> out;
            for (int w = 0; w < n; ++w) out.push_back(row.at(static_cast<std::size_t>(w)).rational());
            beta.push_back(std::move(out));
        }
    }
    std::vector<std::pair<std::string, std::vector<Rational>>> phis;
    if (d.has("phi")) {
        const DocNode ps = d.at("phi");
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const DocNode p = ps.at(k);
            std::string label = p.has("label") ? p.at("label").string() : "phi" + std::to_string(k + 1);
            std::vector<Rational> vals;
            if (p.has("table")) {
                const DocNode t = p.at("table");
                if (static_cast<int>(t.size()) != n) t.fail("expected " + std::to_string(n) + " entries");
                for (int v = 0; v < n; ++v) vals.push_back(t.at(static_cast<std::size_t>(v)).rational());
            } else if (p.has("beta_diagonal")) {
                // phi(v) = beta(a v, v)
                const int a = p.at("beta_diagonal").element(spec.labels, "ring element");
                for (int v = 0; v < n; ++v) vals.push_back(beta[static_cast<std::size_t>(rho.module.act(a, v))][static_cast<std::size_t>(v)]);
            } else if (p.has("square_over")) {
                if (spec.modulus == 0 || rank != 1) p.fail("'square_over' needs Z/n acting on itself");
                const int q = p.at("square_over").small_int(1, 1 << 20);
                for (int v = 0; v < n; ++v) vals.push_back(make_rational(static_cast<long>(v) * v % q, q));
            } else {
                p.fail("expected 'table', 'beta_diagonal' or 'square_over'");
            }
            phis.emplace_back(std::move(label), std::move(vals));
        }
    }

    std::int64_t level = 1;
    if (d.has("level")) {
        level = d.at("level").integer();
        if (level < 1 || level > (1 << 20)) d.at("level").fail("level out of range");
    } else {
        for (const auto& row : beta)
            for (const auto& x : row) level = arith::lcm(level, x.get_den().get_si());
        for (const auto& p : phis)
            for (const auto& x : p.second) level = arith::lcm(level, x.get_den().get_si());
    }
    rho.level = level;
    rho.beta.assign(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            const std::string where = b.has("tag") ? b.path() + "/tag" : b.path() + "/table/" + std::to_string(v) + "/" + std::to_string(w);
            rho.beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
                detail::over_level(beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)], level, DocNode(doc, where));
        }
    for (std::size_t k = 0; k < phis.size(); ++k) {
        QuadraticMap qm;
        qm.label = phis[k].first;
        for (const auto& x : phis[k].second) qm.table.push_back(detail::over_level(x, level, d.at("phi").at(k)));
        rho.phi.push_back(std::move(qm));
    }

    if (d.has("idempotents")) {
        const DocNode ids = d.at("idempotents");
        for (std::size_t k = 0; k < ids.size(); ++k) {
            const DocNode e = ids.at(k);
            SymmetricIdempotent s;
            s.iota = e.at("iota").element(spec.labels, "ring element");
            s.left = e.at("left").element(spec.labels, "ring element");
            s.right = e.at("right").element(spec.labels, "ring element");
            rho.idempotents.push_back(s);
        }
    }
    if (d.has("unit_generators")) {
        const DocNode us = d.at("unit_generators");
        for (std::size_t k = 0; k < us.size(); ++k) rho.unit_generators.push_back(us.at(k).element(spec.labels, "ring element"));
    } else if (spec.ring) {
        rho.unit_generators = spec.ring->unit_generators();
    }
    if (d.has("genus")) rho.genus = d.at("genus").small_int(1, 8);
    try {
        validate(rho);
    } catch (const ValidationError& e) {
        d.fail(std::string("form ring fails validation: ") + e.what());
    }
    return rho;
}

/// Explicit-table FormRingDocument; read_form_ring rebuilds an identical Type.
inline Json form_ring_json(const FormRing& rho) {
    auto labels_of = [&](const std::vector<int>& ids) {
        Json a = Json::array();
        for (int x : ids) a.push_back(rho.ring_labels[static_cast<std::size_t>(x)]);
        return a;
    };
    Json j = detail::header("form_ring");
    j["label"] = rho.label;
    Json ring;
    ring["labels"] = rho.ring_labels;
    if (rho.ring) {
        ring["add"] = rho.ring->add;
        ring["mul"] = rho.ring->mul;
        ring["zero"] = rho.ring->zero;
    }
    ring["one"] = rho.ring_one;
    j["ring"] = ring;
    Json module;
    module["labels"] = rho.module.labels;
    module["add"] = rho.module.add;
    module["action"] = rho.module.action;
    module["zero"] = rho.module.zero;
    j["module"] = module;
    j["level"] = rho.level;
    Json beta = Json::array();
    for (const auto& row : rho.beta) {
        Json r = Json::array();
        for (auto k : row) r.push_back(rational_json(make_rational(static_cast<long>(k), static_cast<long>(rho.level))));
        beta.push_back(r);
    }
    j["beta"] = Json{{"table", beta}};
    Json phi = Json::array();
    for (const auto& q : rho.phi) {
        Json t = Json::array();
        for (auto k : q.table) t.push_back(rational_json(make_rational(static_cast<long>(k), static_cast<long>(rho.level))));
        phi.push_back(Json{{"label", q.label}, {"table", t}});
    }
    j["phi"] = phi;
    Json ids = Json::array();
    for (const auto& e : rho.idempotents)
        ids.push_back(Json{{"iota", rho.ring_labels[static_cast<std::size_t>(e.iota)]},
                           {"left", rho.ring_labels[static_cast<std::size_t>(e.left)]},
                           {"right", rho.ring_labels[static_cast<std::size_t>(e.right)]}});
    j["idempotents"] = ids;
    j["unit_generators"] = labels_of(rho.unit_generators);
    if (rho.genus != 1) j["genus"] = rho.genus;
    return j;
}

/// CodeDocument: {form_ring: preset name or inline document, length,
/// generators: rows of module element ids or labels}.
inline Code read_code(const Json& doc, const CodeOptions& opt = {}) {
    using detail::DocNode;
    const DocNode d(doc, "");
    detail::check_schema(d, "code");
    FormRing rho = read_form_ring(d.at("form_ring").json(), "/form_ring");
    const int N = d.at("length").small_int(0, 64);
    const DocNode gens = d.at("generators");
    std::vector<Word> rows;
    for (std::size_t r = 0; r < gens.size(); ++r) {
        const DocNode row = gens.at(r);
        if (static_cast<int>(row.size()) != N) row.fail("row has " + std::to_string(row.size()) + " entries, length is " + std::to_string(N));
        Word w;
        for (int i = 0; i < N; ++i) w.push_back(row.at(static_cast<std::size_t>(i)).element(rho.module.labels, "module element"));
        rows.push_back(std::move(w));
    }
    try {
        return make_code(rho, N, std::move(rows), opt);
    } catch (const Infeasible& e) {
        d.fail(e.what());
    }
}

inline Json code_json(const Code& c, const std::string& name = "") {
    Json j = detail::header("code");
    if (!name.empty()) j["name"] = name;
    const FormRing& rho = c.form_ring();
    const auto& names = preset_names();
    if (std::find(names.begin(), names.end(), rho.label) != names.end())
        j["form_ring"] = rho.label;
    else
        j["form_ring"] = form_ring_json(rho);
    j["length"] = c.length();
    j["generators"] = c.generators();
    return j;
}

inline Json polynomial_json(const WeightPolynomial& p) {
    Json j = detail::header("polynomial");
    j["variables"] = p.variables();
    j["text"] = p.to_string();
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"exponents", e}, {"coefficient", cyclotomic_json(c)}});
    j["terms"] = terms;
    return j;
}

/// {variables, terms} or {variables, text}; terms win when both are present.
/// A bare string is read over x, y.
inline WeightPolynomial read_polynomial(const Json& doc) {
    using detail::DocNode;
    const DocNode d(doc, "");
    if (doc.is_string()) {
        try {
            return parse_polynomial(doc.get<std::string>(), {"x", "y"});
        } catch (const ParseError& e) {
            d.fail(e.what());
        }
    }
    detail::check_schema(d, "polynomial");
    const std::vector<std::string> vars = d.has("variables") ? d.at("variables").strings() : std::vector<std::string>{"x", "y"};
    if (d.has("text") && !d.has("terms")) {
        try {
            return parse_polynomial(d.at("text").string(), vars);
        } catch (const ParseError& e) {
            d.at("text").fail(e.what());
        }
    }
    WeightPolynomial p(vars);
    const DocNode terms = d.at("terms");
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const DocNode term = terms.at(t);
        const DocNode ex = term.at("exponents");
        if (ex.size() != vars.size()) ex.fail("expected one exponent per variable");
        Exponent e;
        for (std::size_t v = 0; v < vars.size(); ++v) e.push_back(static_cast<std::uint16_t>(ex.at(v).small_int(0, 65535)));
        p.add_term(e, cyclotomic_from(term.at("coefficient")));
    }
    return p;
}

inline Json group_json(const MatrixGroup& G, bool with_generators, bool with_elements) {
    Json j = detail::header("group");
    j["dimension"] = G.dimension();
    j["order"] = G.order();
    if (with_generators) {
        Json gens = Json::array();
        for (const auto& g : G.generators()) gens.push_back(Json{{"label", g.label}, {"matrix", matrix_json(g.matrix)}});
        j["generators"] = gens;
    }
    if (with_elements) {
        Json els = Json::array();
        for (std::size_t i = 0; i < G.order(); ++i) els.push_back(matrix_json(G.element(i)));
        j["elements"] = els;
    }
    return j;
}

/// Generators of a group document; an empty list stands for the trivial group
/// of the given dimension.
inline std::vector<Generator> read_group_generators(const Json& doc) {
    using detail::DocNode;
    const DocNode d(doc, "");
    detail::check_schema(d, "group");
    std::vector<Generator> gens;
    const DocNode gs = d.at("generators");
    for (std::size_t k = 0; k < gs.size(); ++k) {
        const DocNode g = gs.at(k);
        const bool wrapped = g.json().is_object();
        Generator out;
        out.label = wrapped && g.has("label") ? g.at("label").string() : "M" + std::to_string(k + 1);
        out.matrix = matrix_from(wrapped ? g.at("matrix") : g);
        if (!gens.empty() && out.matrix.dim() != gens.front().matrix.dim()) g.fail("generator dimension differs from the first generator");
        gens.push_back(std::move(out));
    }
    if (d.has("dimension")) {
        const int n = d.at("dimension").small_int(1, 4096);
        if (!gens.empty() && gens.front().matrix.dim() != n) d.at("dimension").fail("does not match the generators");
        if (gens.empty()) gens.push_back({"identity", CycMatrix::identity(n)});
    }
    if (gens.empty()) gs.fail("no generators and no dimension");
    return gens;
}

inline Json molien_json(std::uint64_t order, int dimension, const std::vector<Rational>& coeffs,
                        const std::optional<RationalFunction>& series) {
    Json j = detail::header("molien_series");
    j["dimension"] = dimension;
    j["order"] = order;
    if (!coeffs.empty()) {
        Json c = Json::array();
        for (const auto& x : coeffs) c.push_back(rational_json(x));
        j["coefficients"] = c;
    }
    if (series) {
        Json s;
        s["text"] = series->to_string();
        const auto ks = series->product_exponents();
        UPoly den(1);
        for (auto k : ks) den = den * UPoly::one_minus_t_pow(k);
        const UPoly numerator = series->numerator_over(den);
        Json num = Json::array();
        for (const auto& x : numerator.coefficients()) num.push_back(rational_json(x));
        s["numerator"] = num;
        s["denominator_factors"] = ks;
        j["series"] = s;
    }
    return j;
}

inline Json decomposition_json(const std::string& type, const WeightPolynomial& input, const WeightPolynomial& result) {
    Json j = detail::header("decomposition");
    j["type"] = type;
    j["input"] = input.to_string();
    j["text"] = result.to_string();
    Json terms = Json::array();
    for (const auto& [e, c] : result.terms()) terms.push_back(Json{{"f", e[0]}, {"g", e[1]}, {"coefficient", cyclotomic_json(c)}});
    j["terms"] = terms;
    return j;
}

inline Json span_report_json(const SpanReport& r) {
    Json j = detail::header("span_report");
    j["type"] = r.type;
    j["length"] = r.length;
    j["genus"] = r.genus;
    j["group_order"] = r.group_order;
    j["codes"] = r.codes;
    if (r.classes) j["classes"] = *r.classes;
    j["rank"] = r.rank;
    j["molien"] = rational_json(r.molien);
    j["witnesses"] = r.witnesses;
    j["pass"] = r.pass();
    return j;
}

}  // namespace sdc
