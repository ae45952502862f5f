#include "lipt/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lipt {

namespace {

struct AnfParser {
    const std::string& text;
    size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw input_error("ANF syntax error at position " + std::to_string(pos) + ": " + msg);
    }

    // term := '0' | '1' | factor ('*' factor)*; factor := 'x' digits
    // returns the monomial mask, or -1 for the zero term
    long parse_term() {
        skip_ws();
        if (pos >= text.size()) fail("expected a term");
        if (text[pos] == '1') {
            ++pos;
            return 0;
        }
        if (text[pos] == '0') {
            ++pos;
            return -1;
        }
        long mask = 0;
        while (true) {
            skip_ws();
            if (pos >= text.size() || (text[pos] != 'x' && text[pos] != 'X'))
                fail("expected 'x<i>'");
            ++pos;
            size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected a variable index");
            int idx = std::stoi(text.substr(start, pos - start));
            if (idx < 1 || idx > n) fail("variable index out of range: x" + std::to_string(idx));
            mask |= 1L << (idx - 1);
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        return mask;
    }

    std::vector<long> parse_all() {
        std::vector<long> terms;
        terms.push_back(parse_term());
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            if (text[pos] != '+') fail("expected '+' between terms");
            ++pos;
            terms.push_back(parse_term());
        }
        return terms;
    }
};

} // namespace

BooleanFunction parse_anf(const std::string& text, int n) {
    require_dim(n);
    AnfParser p{text, 0, n};
    std::vector<long> terms = p.parse_all();
    // XOR of monomial indicators; duplicate terms cancel. The Moebius
    // butterfly turns coefficients back into the truth table.
    std::vector<std::uint8_t> a(size_t(1) << n, 0);
    for (long t : terms)
        if (t >= 0) a[size_t(t)] ^= 1;
    for (int b = 0; b < n; ++b)
        for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
            if (x & (1u << b)) a[x] ^= a[x ^ (1u << b)];
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (a[x]) f.set(x, true);
    return f;
}

std::string anf_to_string(const BooleanFunction& f) {
    auto coeffs = anf_coefficients(f);
    std::string out;
    for (std::uint32_t m = 0; m < f.size(); ++m) {
        if (!((coeffs[m >> 6] >> (m & 63)) & 1u)) continue;
        if (!out.empty()) out += " + ";
        if (m == 0) {
            out += "1";
            continue;
        }
        bool first = true;
        for (int i = 0; i < f.dim(); ++i) {
            if ((m >> i) & 1u) {
                if (!first) out += "*";
                out += "x" + std::to_string(i + 1);
                first = false;
            }
        }
    }
    return out.empty() ? "0" : out;
}

std::string write_table(const BooleanFunction& f) {
    std::uint64_t bits = f.size();
    size_t digits = size_t((bits + 3) / 4);
    std::string hex(digits, '0');
    for (std::uint32_t x = 0; x < bits; ++x) {
        if (!f.get(x)) continue;
        size_t nib = x / 4;
        size_t strpos = digits - 1 - nib; // most significant nibble first
        int cur = std::isdigit(static_cast<unsigned char>(hex[strpos]))
                      ? hex[strpos] - '0'
                      : hex[strpos] - 'a' + 10;
        cur |= 1 << (x % 4);
        hex[strpos] = cur < 10 ? char('0' + cur) : char('a' + cur - 10);
    }
    return "n=" + std::to_string(f.dim()) + "\n" + hex + "\n";
}

BooleanFunction parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string line1, line2;
    if (!std::getline(in, line1) || line1.rfind("n=", 0) != 0)
        throw input_error("truth table: first line must be n=<int>");
    int n = std::stoi(line1.substr(2));
    require_dim(n);
    if (!std::getline(in, line2)) throw input_error("truth table: missing hex line");
    while (!line2.empty() && std::isspace(static_cast<unsigned char>(line2.back())))
        line2.pop_back();
    std::uint64_t bits = std::uint64_t(1) << n;
    size_t digits = size_t((bits + 3) / 4);
    if (line2.size() != digits)
        throw input_error("truth table: expected " + std::to_string(digits) + " hex digits");
    BooleanFunction f(n);
    for (size_t strpos = 0; strpos < digits; ++strpos) {
        char c = std::tolower(static_cast<unsigned char>(line2[strpos]));
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else throw input_error("truth table: bad hex digit");
        size_t nib = digits - 1 - strpos;
        for (int j = 0; j < 4; ++j) {
            std::uint64_t idx = nib * 4 + j;
            if (idx < bits && ((v >> j) & 1)) f.set(std::uint32_t(idx), true);
        }
    }
    return f;
}

BooleanFunction parse_function_source(const std::string& source, int n) {
    require_dim(n);
    if (source == "const0") return BooleanFunction::constant(n, false);
    if (source == "const1") return BooleanFunction::constant(n, true);
    if (source == "bent") return BooleanFunction::inner_product_bent(n);
    auto colon = source.find(':');
    std::string kind = colon == std::string::npos ? source : source.substr(0, colon);
    if (kind == "hyperplane") {
        if (colon == std::string::npos) throw input_error("hyperplane:<bits> expected");
        F2Vector a = F2Vector::parse(source.substr(colon + 1));
        if (a.dim != n) throw input_error("hyperplane direction has wrong length");
        return BooleanFunction::hyperplane(a);
    }
    if (kind == "random") {
        std::string rest = source.substr(colon + 1);
        auto colon2 = rest.find(':');
        std::uint64_t seed = std::stoull(rest.substr(0, colon2));
        double dens = colon2 == std::string::npos ? 0.5 : std::stod(rest.substr(colon2 + 1));
        Rng rng = make_rng(seed);
        return BooleanFunction::random(n, dens, rng);
    }
    if (kind == "anf") return parse_anf(source.substr(colon + 1), n);
    if (kind == "table") {
        std::ifstream in(source.substr(colon + 1));
        if (!in) throw input_error("cannot open table file: " + source.substr(colon + 1));
        std::stringstream buf;
        buf << in.rdbuf();
        BooleanFunction f = parse_table(buf.str());
        if (f.dim() != n) throw input_error("table file has different n");
        return f;
    }
    throw input_error("unknown function source: " + source);
}

namespace {

std::pair<F2Matrix, std::uint32_t> rows_sigma_from_json(const nlohmann::json& j) {
    if (!j.contains("rows") || !j.contains("sigma"))
        throw input_error("system JSON needs \"rows\" and \"sigma\"");
    std::vector<std::string> rows = j.at("rows").get<std::vector<std::string>>();
    std::string sigma = j.at("sigma").get<std::string>();
    if (rows.empty()) throw input_error("system JSON: empty rows");
    size_t k = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != k) throw input_error("system JSON: ragged rows");
    if (sigma.size() != k) throw input_error("system JSON: sigma length != row length");
    F2Matrix m(int(rows.size()), int(k));
    for (size_t r = 0; r < rows.size(); ++r)
        m.row_bits[r] = F2Vector::parse(rows[r]).bits;
    return {m, F2Vector::parse(sigma).bits};
}

} // namespace

ValidationResult parse_system_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    auto [m, sigma] = rows_sigma_from_json(j);
    return validate(m, sigma);
}

Family parse_family(const std::string& text) {
    // shorthand rm:<d>
    if (text.rfind("rm:", 0) == 0) {
        Family fam;
        fam.generators.push_back(FamilyGenerator{"rm", std::stoi(text.substr(3)), 64});
        return fam;
    }
    nlohmann::json j = nlohmann::json::parse(text);
    Family fam;
    if (j.contains("rows")) {
        // a bare system doubles as a one-element family
        auto [m, sigma] = rows_sigma_from_json(j);
        ValidationResult v = validate(m, sigma);
        if (!v.usable()) throw input_error("degenerate system in family: " + v.note);
        fam.explicit_systems.push_back(*v.system);
        return fam;
    }
    if (j.contains("systems")) {
        for (const auto& js : j.at("systems")) {
            auto [m, sigma] = rows_sigma_from_json(js);
            ValidationResult v = validate(m, sigma);
            if (!v.usable()) throw input_error("degenerate system in family: " + v.note);
            fam.explicit_systems.push_back(*v.system);
        }
    }
    if (j.contains("generators")) {
        for (const auto& jg : j.at("generators")) {
            FamilyGenerator gen;
            gen.name = jg.at("name").get<std::string>();
            gen.d = jg.value("d", 1);
            gen.max_k = jg.value("max_k", 64);
            fam.generators.push_back(gen);
        }
    }
    return fam;
}

} // namespace lipt
