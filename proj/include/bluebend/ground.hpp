#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "bluebend/error.hpp"

namespace bluebend {

using Q = mpq_class;
using Z = mpz_class;

enum class GroundKind { F1, F1SQ, BOOL, NAT, INT, RAT, RPLUS, TROP, OTROP, TROPN, ORDGROUP };

struct GroundTag {
    GroundKind kind = GroundKind::F1;
    int n = 0;  // arity for TROPN, rank for ORDGROUP

    static GroundTag of(GroundKind k, int n = 0);
    static GroundTag parse(const std::string& text);

    bool idempotent() const;
    bool with_minus_one() const;
    bool has_addition() const;
    bool has_pos_order() const;
    bool is_field() const;  // every nonzero scalar is a unit
    std::string str() const;

    friend bool operator==(const GroundTag&, const GroundTag&) = default;
    friend auto operator<=>(const GroundTag&, const GroundTag&) = default;
};

// Scalars live in q; TROPN coordinates and ORDGROUP exponents live in vec.
// For those two kinds the zero element is the empty vector.
struct GroundValue {
    GroundTag tag;
    Q q;
    std::vector<Q> vec;

    static GroundValue zero(GroundTag t);
    static GroundValue one(GroundTag t);
    static GroundValue integer(GroundTag t, long v);
    static GroundValue rational(GroundTag t, const Q& v);
    static GroundValue tuple(GroundTag t, std::vector<Q> coords);
    static GroundValue parse(GroundTag t, const std::string& text);

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;
    GroundValue inverse() const;  // requires is_unit()
    std::string str() const;

    friend bool operator==(const GroundValue& a, const GroundValue& b) {
        return a.tag == b.tag && a.q == b.q && a.vec == b.vec;
    }
    friend bool operator<(const GroundValue& a, const GroundValue& b);
};

GroundValue g_mul(const GroundValue& a, const GroundValue& b);
GroundValue g_add(const GroundValue& a, const GroundValue& b);
GroundValue g_sum(GroundTag t, const std::vector<GroundValue>& xs);

// Natural order of the positive view: a <= b.
bool g_le(const GroundValue& a, const GroundValue& b);

enum class OrderMode { alg, pos };
bool g_leq_sum(OrderMode mode, const std::vector<GroundValue>& lhs, const std::vector<GroundValue>& rhs);

struct BaseValuation {
    enum class Kind { trivial, p_adic, lex_composite, archimedean, identity };
    Kind kind = Kind::trivial;
    long p = 0;
    std::vector<long> primes;  // lex_composite entries, 0 marks a trivial coordinate
    GroundTag source;
    GroundTag target;

    GroundValue operator()(const GroundValue& c) const;
    std::string str() const;
};

BaseValuation base_valuation(BaseValuation::Kind kind, GroundTag source, GroundTag target, long p = 0,
                             std::vector<long> primes = {});
BaseValuation parse_base_valuation(const std::string& text, GroundTag source, GroundTag target);

// p-adic exponent of a nonzero rational.
long padic_order(const Q& x, long p);

}  // namespace bluebend
