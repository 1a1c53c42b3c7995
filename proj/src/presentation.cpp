#include "bluebend/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace bluebend {

Monomial Monomial::constant(const GroundValue& c) { return Monomial{c, {}}; }

Monomial Monomial::var(GroundTag t, const std::string& name, int e) {
    Monomial m{GroundValue::one(t), {}};
    if (e != 0) m.exps[name] = e;
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto& [_, e] : exps) d += e;
    return d;
}

std::string Monomial::str() const {
    if (coeff.is_zero()) return "0";
    std::string vars;
    for (auto& [name, e] : exps) {
        if (!vars.empty()) vars += "*";
        vars += name;
        if (e != 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty()) return coeff.str();
    if (coeff.is_one()) return vars;
    if (!coeff.tag.with_minus_one() || coeff.q != -1) return coeff.str() + "*" + vars;
    return "-" + vars;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.exps != b.exps) return a.exps < b.exps;
    return a.coeff < b.coeff;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r{g_mul(a.coeff, b.coeff), {}};
    if (r.coeff.is_zero()) return r;
    r.exps = a.exps;
    for (auto& [name, e] : b.exps) r.exps[name] += e;
    return r;
}

FormalSum::FormalSum(std::initializer_list<Monomial> ms) : FormalSum(std::vector<Monomial>(ms)) {}

FormalSum::FormalSum(std::vector<Monomial> ms) {
    for (auto& m : ms)
        if (!m.is_zero()) terms.push_back(std::move(m));
}

std::string FormalSum::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        out += terms[i].str();
    }
    return out;
}

FormalSum operator+(const FormalSum& a, const FormalSum& b) {
    FormalSum r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return r;
}

FormalSum operator*(const Monomial& m, const FormalSum& s) {
    std::vector<Monomial> out;
    for (auto& t : s.terms) out.push_back(m * t);
    return FormalSum(std::move(out));
}

FormalSum operator*(const FormalSum& a, const FormalSum& b) {
    std::vector<Monomial> out;
    for (auto& x : a.terms)
        for (auto& y : b.terms) out.push_back(x * y);
    return FormalSum(std::move(out));
}

std::string Relation::str() const {
    return lhs.str() + (mode == RelMode::LE ? " <= " : " == ") + rhs.str();
}

Presentation Presentation::free(GroundTag ground, std::vector<std::string> generators) {
    Presentation p;
    p.ground = ground;
    p.generators = std::move(generators);
    return p;
}

int Presentation::index_of(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return static_cast<int>(i);
    return -1;
}

Monomial Presentation::gen(const std::string& name, int e) const {
    if (!has_generator(name)) fail("UnknownGenerator", "generator '" + name + "' is not declared");
    return Monomial::var(ground, name, e);
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char ch : s)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'' || ch == '.')) return false;
    return true;
}

}  // namespace

void Presentation::validate() const {
    std::set<std::string> seen;
    for (auto& g : generators) {
        if (!valid_name(g)) fail("ParseError", "invalid generator name '" + g + "'");
        if (!seen.insert(g).second) fail("NameClash", "generator '" + g + "' declared twice");
    }
    for (auto& [a, b] : monoid_relations) {
        validate(a);
        validate(b);
    }
    for (auto& r : subaddition) validate(r);
    if (budget_default.max_depth < 1 || budget_default.max_sum_len < 1 || budget_default.max_degree < 1)
        fail("InvalidBudget", "budget bounds must be positive");
}

void Presentation::validate(const Monomial& m) const {
    if (m.coeff.tag != ground)
        fail("TagMismatch", "coefficient " + m.coeff.str() + " is not in " + ground.str());
    for (auto& [name, e] : m.exps) {
        if (!has_generator(name)) fail("UnknownGenerator", "generator '" + name + "' is not declared");
        if (e < 0) fail("ParseError", "negative exponent on '" + name + "'");
    }
}

void Presentation::validate(const FormalSum& s) const {
    for (auto& t : s.terms) validate(t);
}

void Presentation::validate(const Relation& r) const {
    validate(r.lhs);
    validate(r.rhs);
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Proved: return "Proved";
        case Outcome::Disproved: return "Disproved";
        case Outcome::Unknown: return "Unknown";
    }
    return "?";
}

Verdict conjoin(const Verdict& a, const Verdict& b) {
    if (a.is_disproved()) return a;
    if (b.is_disproved()) return b;
    if (a.is_unknown()) return a;
    if (b.is_unknown()) return b;
    Verdict r = a;
    r.trace.insert(r.trace.end(), b.trace.begin(), b.trace.end());
    return r;
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

bool coefficient_start(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '(' || ch == '[' || ch == '-' || ch == '+';
}

// Splits on '*' outside brackets.
std::vector<std::string> factors(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == '*' && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(strip(cur));
    return out;
}

}  // namespace

Monomial parse_monomial(const Presentation& p, const std::string& raw) {
    std::string s = strip(raw);
    if (s.empty()) fail("ParseError", "empty monomial");
    bool negate = false;
    if (s[0] == '-' && s.size() > 1 && !std::isdigit(static_cast<unsigned char>(s[1]))) {
        negate = true;
        s = strip(s.substr(1));
    }
    Monomial m = p.one();
    for (auto& f : factors(s)) {
        if (f.empty()) fail("ParseError", "empty factor in '" + raw + "'");
        if (coefficient_start(f[0])) {
            m.coeff = g_mul(m.coeff, GroundValue::parse(p.ground, f));
            continue;
        }
        std::string name = f;
        int e = 1;
        size_t hat = f.find('^');
        if (hat != std::string::npos) {
            name = strip(f.substr(0, hat));
            std::string ex = strip(f.substr(hat + 1));
            try {
                size_t used = 0;
                e = std::stoi(ex, &used);
                if (used != ex.size()) throw std::invalid_argument(ex);
            } catch (const std::exception&) {
                fail("ParseError", "bad exponent in '" + f + "'");
            }
            if (e < 0) fail("ParseError", "negative exponent in '" + f + "'");
        }
        if (!p.has_generator(name)) fail("UnknownGenerator", "generator '" + name + "' is not declared");
        if (e > 0) m.exps[name] += e;
    }
    if (negate) m.coeff = g_mul(m.coeff, GroundValue::integer(p.ground, -1));
    if (m.coeff.is_zero()) m.exps.clear();
    return m;
}

FormalSum parse_sum(const Presentation& p, const std::string& raw) {
    std::string s = strip(raw);
    std::vector<std::string> pieces;
    std::string cur;
    int depth = 0;
    auto prev_is_term = [&]() {
        std::string t = strip(cur);
        if (t.empty()) return false;
        char last = t.back();
        return !(last == '*' || last == '/' || last == '^' || last == '(' || last == '[' || last == ',');
    };
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && ch == '+') {
            pieces.push_back(cur);
            cur.clear();
        } else if (depth == 0 && ch == '-' && prev_is_term()) {
            pieces.push_back(cur);
            cur = "-";
        } else {
            cur += ch;
        }
    }
    pieces.push_back(cur);
    std::vector<Monomial> terms;
    for (auto& piece : pieces) {
        std::string t = strip(piece);
        if (t.empty()) {
            if (pieces.size() == 1) break;
            fail("ParseError", "empty term in '" + raw + "'");
        }
        terms.push_back(parse_monomial(p, t));
    }
    return FormalSum(std::move(terms));
}

Relation parse_relation(const Presentation& p, const std::string& raw) {
    struct Op {
        const char* text;
        RelMode mode;
    };
    static const Op ops[] = {{"<=", RelMode::LE}, {"==", RelMode::EQ}, {"=", RelMode::EQ}};
    for (auto& op : ops) {
        size_t at = raw.find(op.text);
        if (at == std::string::npos) continue;
        Relation r;
        r.mode = op.mode;
        r.lhs = parse_sum(p, raw.substr(0, at));
        r.rhs = parse_sum(p, raw.substr(at + std::string(op.text).size()));
        return r;
    }
    fail("ParseError", "relation '" + raw + "' needs <= or ==");
}

}  // namespace bluebend
