#include "bluebend/ground.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bluebend {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool vec_kind(GroundKind k) { return k == GroundKind::TROPN || k == GroundKind::ORDGROUP; }

std::string upper(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

Q parse_q(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) fail("ParseError", "empty rational");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false;
    if (i >= s.size()) fail("ParseError", "malformed rational '" + raw + "'");
    for (size_t j = i; j < s.size(); ++j) {
        if (s[j] == '/') {
            if (slash || j == i || j + 1 == s.size()) fail("ParseError", "malformed rational '" + raw + "'");
            slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
            fail("ParseError", "malformed rational '" + raw + "'");
        }
    }
    if (s[0] == '+') s = s.substr(1);
    Q q;
    try {
        q.set_str(s, 10);
    } catch (const std::exception&) {
        fail("ParseError", "malformed rational '" + raw + "'");
    }
    if (q.get_den() == 0) fail("ParseError", "zero denominator in '" + raw + "'");
    q.canonicalize();
    return q;
}

std::vector<Q> parse_list(const std::string& inner) {
    std::vector<Q> out;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_q(item));
    return out;
}

bool lex_less(const std::vector<Q>& a, const std::vector<Q>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_scalar(GroundTag t, const Q& q) {
    auto bad = [&](const char* why) { fail("InvalidValue", q.get_str() + " is not a " + t.str() + " value: " + why); };
    switch (t.kind) {
        case GroundKind::F1:
        case GroundKind::BOOL:
            if (q != 0 && q != 1) bad("expected 0 or 1");
            break;
        case GroundKind::F1SQ:
            if (q != 0 && q != 1 && q != -1) bad("expected 0, 1 or -1");
            break;
        case GroundKind::NAT:
            if (q < 0 || q.get_den() != 1) bad("expected a nonnegative integer");
            break;
        case GroundKind::INT:
            if (q.get_den() != 1) bad("expected an integer");
            break;
        case GroundKind::RAT:
            break;
        case GroundKind::RPLUS:
        case GroundKind::TROP:
            if (q < 0) bad("expected a nonnegative rational");
            break;
        case GroundKind::OTROP:
            if (q < 0 || q > 1) bad("expected a rational in [0,1]");
            break;
        default:
            break;
    }
}

}  // namespace

GroundTag GroundTag::of(GroundKind k, int n) {
    if (k == GroundKind::TROPN) {
        if (n < 1) fail("InvalidTag", "TROPN needs n >= 1");
        if (n == 1) return GroundTag{GroundKind::TROP, 0};
        return GroundTag{k, n};
    }
    if (k == GroundKind::ORDGROUP) {
        if (n < 1) fail("InvalidTag", "ORDGROUP needs rank >= 1");
        return GroundTag{k, n};
    }
    return GroundTag{k, 0};
}

GroundTag GroundTag::parse(const std::string& raw) {
    std::string s = upper(trim(raw));
    auto arg = [&](const std::string& head) -> std::optional<int> {
        if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
        std::string inner = s.substr(head.size() + 1, s.size() - head.size() - 2);
        try {
            size_t used = 0;
            int v = std::stoi(inner, &used);
            if (used != inner.size()) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    };
    static const std::pair<const char*, GroundKind> plain[] = {
        {"F1", GroundKind::F1},       {"F1SQ", GroundKind::F1SQ}, {"BOOL", GroundKind::BOOL},
        {"NAT", GroundKind::NAT},     {"INT", GroundKind::INT},   {"RAT", GroundKind::RAT},
        {"RPLUS", GroundKind::RPLUS}, {"TROP", GroundKind::TROP}, {"OTROP", GroundKind::OTROP}};
    for (auto& [name, k] : plain)
        if (s == name) return of(k);
    if (auto n = arg("TROPN")) return of(GroundKind::TROPN, *n);
    if (auto n = arg("ORDGROUP")) return of(GroundKind::ORDGROUP, *n);
    fail("ParseError", "unknown ground tag '" + raw + "'");
}

bool GroundTag::idempotent() const {
    switch (kind) {
        case GroundKind::BOOL:
        case GroundKind::TROP:
        case GroundKind::OTROP:
        case GroundKind::TROPN:
        case GroundKind::ORDGROUP:
            return true;
        default:
            return false;
    }
}

bool GroundTag::with_minus_one() const {
    return kind == GroundKind::F1SQ || kind == GroundKind::INT || kind == GroundKind::RAT;
}

bool GroundTag::has_addition() const { return kind != GroundKind::F1 && kind != GroundKind::F1SQ; }

bool GroundTag::has_pos_order() const { return !with_minus_one(); }

bool GroundTag::is_field() const {
    switch (kind) {
        case GroundKind::NAT:
        case GroundKind::INT:
        case GroundKind::OTROP:
            return false;
        default:
            return true;
    }
}

std::string GroundTag::str() const {
    switch (kind) {
        case GroundKind::F1: return "F1";
        case GroundKind::F1SQ: return "F1SQ";
        case GroundKind::BOOL: return "BOOL";
        case GroundKind::NAT: return "NAT";
        case GroundKind::INT: return "INT";
        case GroundKind::RAT: return "RAT";
        case GroundKind::RPLUS: return "RPLUS";
        case GroundKind::TROP: return "TROP";
        case GroundKind::OTROP: return "OTROP";
        case GroundKind::TROPN: return "TROPN(" + std::to_string(n) + ")";
        case GroundKind::ORDGROUP: return "ORDGROUP(" + std::to_string(n) + ")";
    }
    return "?";
}

GroundValue GroundValue::zero(GroundTag t) { return GroundValue{t, Q(0), {}}; }

GroundValue GroundValue::one(GroundTag t) {
    if (t.kind == GroundKind::TROPN) return GroundValue{t, Q(0), std::vector<Q>(t.n, Q(1))};
    if (t.kind == GroundKind::ORDGROUP) return GroundValue{t, Q(0), std::vector<Q>(t.n, Q(0))};
    return GroundValue{t, Q(1), {}};
}

GroundValue GroundValue::integer(GroundTag t, long v) { return rational(t, Q(v)); }

GroundValue GroundValue::rational(GroundTag t, const Q& v) {
    if (vec_kind(t.kind)) {
        if (v == 0) return zero(t);
        if (v == 1) return one(t);
        if (t.kind == GroundKind::TROPN && v > 0) {
            std::vector<Q> c(t.n, Q(1));
            c[0] = v;
            return tuple(t, c);
        }
        fail("InvalidValue", "scalar " + v.get_str() + " has no " + t.str() + " meaning");
    }
    check_scalar(t, v);
    return GroundValue{t, v, {}};
}

GroundValue GroundValue::tuple(GroundTag t, std::vector<Q> coords) {
    if (!vec_kind(t.kind)) fail("InvalidValue", t.str() + " values are scalars");
    if (static_cast<int>(coords.size()) != t.n)
        fail("InvalidValue", t.str() + " expects " + std::to_string(t.n) + " coordinates");
    for (auto& c : coords) {
        if (t.kind == GroundKind::TROPN && c <= 0) fail("InvalidValue", "TROPN coordinates must be positive");
        if (t.kind == GroundKind::ORDGROUP && c.get_den() != 1) fail("InvalidValue", "ORDGROUP exponents are integers");
    }
    return GroundValue{t, Q(0), std::move(coords)};
}

GroundValue GroundValue::parse(GroundTag t, const std::string& raw) {
    std::string s = trim(raw);
    if (t.kind == GroundKind::TROPN) {
        if (s == "0") return zero(t);
        if (s.size() < 2 || s.front() != '(' || s.back() != ')') fail("ParseError", "TROPN value must be (a1,...,an) or 0");
        return tuple(t, parse_list(s.substr(1, s.size() - 2)));
    }
    if (t.kind == GroundKind::ORDGROUP) {
        if (s == "0") return zero(t);
        if (s == "1") return one(t);
        if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail("ParseError", "ORDGROUP value must be [e1,...,er] or 0");
        return tuple(t, parse_list(s.substr(1, s.size() - 2)));
    }
    return rational(t, parse_q(s));
}

bool GroundValue::is_zero() const { return vec_kind(tag.kind) ? vec.empty() : q == 0; }

bool GroundValue::is_one() const { return *this == one(tag); }

bool GroundValue::is_unit() const {
    if (is_zero()) return false;
    switch (tag.kind) {
        case GroundKind::NAT:
        case GroundKind::OTROP:
            return q == 1;
        case GroundKind::INT:
            return q == 1 || q == -1;
        default:
            return true;
    }
}

GroundValue GroundValue::inverse() const {
    if (!is_unit()) fail("NotAUnit", str() + " is not invertible in " + tag.str());
    if (tag.kind == GroundKind::TROPN) {
        std::vector<Q> c = vec;
        for (auto& x : c) x = 1 / x;
        return GroundValue{tag, Q(0), c};
    }
    if (tag.kind == GroundKind::ORDGROUP) {
        std::vector<Q> c = vec;
        for (auto& x : c) x = -x;
        return GroundValue{tag, Q(0), c};
    }
    Q r = 1 / q;
    r.canonicalize();
    return GroundValue{tag, r, {}};
}

std::string GroundValue::str() const {
    if (vec_kind(tag.kind)) {
        if (vec.empty()) return "0";
        std::string out = tag.kind == GroundKind::TROPN ? "(" : "[";
        for (size_t i = 0; i < vec.size(); ++i) {
            if (i) out += ",";
            out += vec[i].get_str();
        }
        out += tag.kind == GroundKind::TROPN ? ")" : "]";
        return out;
    }
    return q.get_str();
}

bool operator<(const GroundValue& a, const GroundValue& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    if (a.q != b.q) return a.q < b.q;
    if (a.vec.size() != b.vec.size()) return a.vec.size() < b.vec.size();
    return lex_less(a.vec, b.vec);
}

GroundValue g_mul(const GroundValue& a, const GroundValue& b) {
    if (a.tag != b.tag) fail("TagMismatch", a.tag.str() + " vs " + b.tag.str());
    if (a.is_zero() || b.is_zero()) return GroundValue::zero(a.tag);
    if (a.tag.kind == GroundKind::TROPN) {
        std::vector<Q> c(a.vec.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.vec[i] * b.vec[i];
        return GroundValue{a.tag, Q(0), c};
    }
    if (a.tag.kind == GroundKind::ORDGROUP) {
        std::vector<Q> c(a.vec.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.vec[i] + b.vec[i];
        return GroundValue{a.tag, Q(0), c};
    }
    Q r = a.q * b.q;
    r.canonicalize();
    return GroundValue{a.tag, r, {}};
}

GroundValue g_add(const GroundValue& a, const GroundValue& b) {
    if (a.tag != b.tag) fail("TagMismatch", a.tag.str() + " vs " + b.tag.str());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    switch (a.tag.kind) {
        case GroundKind::F1:
        case GroundKind::F1SQ:
            fail("NoAddition", a.tag.str() + " has no total addition");
        case GroundKind::BOOL:
            return GroundValue::one(a.tag);
        case GroundKind::NAT:
        case GroundKind::INT:
        case GroundKind::RAT:
        case GroundKind::RPLUS: {
            Q r = a.q + b.q;
            r.canonicalize();
            return GroundValue{a.tag, r, {}};
        }
        case GroundKind::TROP:
        case GroundKind::OTROP:
            return a.q < b.q ? b : a;
        case GroundKind::TROPN:
        case GroundKind::ORDGROUP:
            return lex_less(a.vec, b.vec) ? b : a;
    }
    fail("NoAddition", a.tag.str());
}

GroundValue g_sum(GroundTag t, const std::vector<GroundValue>& xs) {
    GroundValue acc = GroundValue::zero(t);
    for (auto& x : xs) acc = g_add(acc, x);
    return acc;
}

bool g_le(const GroundValue& a, const GroundValue& b) {
    if (a.tag != b.tag) fail("TagMismatch", a.tag.str() + " vs " + b.tag.str());
    if (a.tag.with_minus_one()) fail("NoOrder", a.tag.str() + " has a trivial positive quotient");
    if (vec_kind(a.tag.kind)) {
        if (a.vec.empty()) return true;
        if (b.vec.empty()) return false;
        return !lex_less(b.vec, a.vec);
    }
    return a.q <= b.q;
}

bool g_leq_sum(OrderMode mode, const std::vector<GroundValue>& lhs, const std::vector<GroundValue>& rhs) {
    const GroundValue* first = !lhs.empty() ? &lhs.front() : (!rhs.empty() ? &rhs.front() : nullptr);
    if (!first) return true;
    GroundTag t = first->tag;
    for (auto* side : {&lhs, &rhs})
        for (auto& v : *side)
            if (v.tag != t) fail("TagMismatch", v.tag.str() + " vs " + t.str());

    auto net = [](const std::vector<GroundValue>& xs) {
        Q s = 0;
        for (auto& x : xs) s += x.q;
        return s;
    };
    if (mode == OrderMode::pos && t.with_minus_one()) fail("NoOrder", t.str() + " has a trivial positive quotient");
    if (t.kind == GroundKind::F1 || t.kind == GroundKind::F1SQ) {
        Q a = net(lhs), b = net(rhs);
        return mode == OrderMode::alg ? a == b : a <= b;
    }
    GroundValue a = g_sum(t, lhs), b = g_sum(t, rhs);
    return mode == OrderMode::alg ? a == b : g_le(a, b);
}

long padic_order(const Q& x, long p) {
    if (x == 0) fail("InvalidValue", "order of zero");
    long ord = 0;
    Z num = abs(x.get_num()), den = x.get_den();
    while (num % p == 0) {
        num /= p;
        ++ord;
    }
    while (den % p == 0) {
        den /= p;
        --ord;
    }
    return ord;
}

namespace {

Q padic_abs(const Q& x, long p) {
    long ord = padic_order(x, p);
    Q r = 1;
    for (long i = 0; i < std::labs(ord); ++i) r *= p;
    if (ord > 0) r = 1 / r;
    r.canonicalize();
    return r;
}

bool numeric_source(GroundTag s) {
    return s.kind == GroundKind::RAT || s.kind == GroundKind::INT || s.kind == GroundKind::NAT;
}

bool embeds(GroundTag s, GroundTag t) {
    if (s == t) return true;
    switch (s.kind) {
        case GroundKind::F1: return true;
        case GroundKind::BOOL: return t.idempotent();
        case GroundKind::NAT:
            return t.kind == GroundKind::INT || t.kind == GroundKind::RAT || t.kind == GroundKind::RPLUS;
        case GroundKind::INT:
        case GroundKind::F1SQ:
            return t.kind == GroundKind::INT || t.kind == GroundKind::RAT;
        case GroundKind::OTROP: return t.kind == GroundKind::TROP;
        default: return false;
    }
}

}  // namespace

GroundValue BaseValuation::operator()(const GroundValue& c) const {
    if (c.tag != source) fail("Incompatible", "valuation on " + source.str() + " applied to " + c.tag.str());
    if (c.is_zero()) return GroundValue::zero(target);
    switch (kind) {
        case Kind::trivial:
            return GroundValue::one(target);
        case Kind::identity:
            if (c.tag == target) return c;
            if (c.tag.kind == GroundKind::F1 || c.tag.kind == GroundKind::BOOL) return GroundValue::one(target);
            return GroundValue::rational(target, c.q);
        case Kind::p_adic: {
            Q a = padic_abs(c.q, p);
            if (target.kind == GroundKind::OTROP && a > 1)
                fail("Incompatible", c.str() + " is not integral at " + std::to_string(p));
            return GroundValue::rational(target, a);
        }
        case Kind::archimedean:
            return GroundValue::rational(target, abs(c.q));
        case Kind::lex_composite: {
            std::vector<Q> coords;
            for (long pr : primes) coords.push_back(pr == 0 ? Q(1) : padic_abs(c.q, pr));
            return GroundValue::tuple(target, coords);
        }
    }
    fail("Incompatible", "unknown valuation kind");
}

std::string BaseValuation::str() const {
    switch (kind) {
        case Kind::trivial: return "trivial";
        case Kind::identity: return "identity";
        case Kind::archimedean: return "archimedean";
        case Kind::p_adic: return "p_adic(" + std::to_string(p) + ")";
        case Kind::lex_composite: {
            std::string s = "lex_composite(";
            for (size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
            return s + ")";
        }
    }
    return "?";
}

BaseValuation base_valuation(BaseValuation::Kind kind, GroundTag source, GroundTag target, long p,
                             std::vector<long> primes) {
    using K = BaseValuation::Kind;
    auto incompatible = [&](const std::string& why) {
        fail("Incompatible", "cannot build valuation " + source.str() + " -> " + target.str() + ": " + why);
    };
    switch (kind) {
        case K::trivial:
            break;
        case K::identity:
            if (!embeds(source, target)) incompatible("no canonical embedding");
            break;
        case K::p_adic:
            if (!numeric_source(source)) incompatible("p-adic needs a rational source");
            if (target.kind != GroundKind::TROP && target.kind != GroundKind::OTROP) incompatible("p-adic targets TROP or OTROP");
            if (!is_prime(p)) incompatible(std::to_string(p) + " is not prime");
            if (target.kind == GroundKind::OTROP && source.kind == GroundKind::RAT)
                incompatible("OTROP only receives integral sources");
            break;
        case K::archimedean:
            if (!numeric_source(source)) incompatible("archimedean needs a rational source");
            if (target.kind != GroundKind::RPLUS) incompatible("archimedean targets RPLUS");
            break;
        case K::lex_composite: {
            if (!numeric_source(source)) incompatible("lex_composite needs a rational source");
            if (target.kind != GroundKind::TROPN || static_cast<int>(primes.size()) != target.n)
                incompatible("lex_composite needs one entry per TROPN coordinate");
            long seen = 0;
            for (long pr : primes) {
                if (pr == 0) continue;
                if (!is_prime(pr)) incompatible(std::to_string(pr) + " is not prime");
                if (seen && pr != seen) incompatible("distinct primes do not compose to a valuation");
                seen = pr;
            }
            break;
        }
    }
    return BaseValuation{kind, p, std::move(primes), source, target};
}

BaseValuation parse_base_valuation(const std::string& raw, GroundTag source, GroundTag target) {
    std::string s = trim(raw);
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    using K = BaseValuation::Kind;
    if (s == "trivial") return base_valuation(K::trivial, source, target);
    if (s == "identity") return base_valuation(K::identity, source, target);
    if (s == "archimedean") return base_valuation(K::archimedean, source, target);
    auto inner = [&](const std::string& head) -> std::optional<std::string> {
        if (s.rfind(head + "(", 0) == 0 && s.back() == ')') return s.substr(head.size() + 1, s.size() - head.size() - 2);
        return std::nullopt;
    };
    try {
        if (auto a = inner("p_adic")) return base_valuation(K::p_adic, source, target, std::stol(*a));
        if (auto a = inner("lex_composite")) {
            std::vector<long> ps;
            std::stringstream ss(*a);
            std::string item;
            while (std::getline(ss, item, ',')) ps.push_back(std::stol(item));
            return base_valuation(K::lex_composite, source, target, 0, ps);
        }
    } catch (const std::invalid_argument&) {
        fail("ParseError", "malformed valuation '" + raw + "'");
    }
    fail("ParseError", "unknown valuation '" + raw + "'");
}

}  // namespace bluebend
