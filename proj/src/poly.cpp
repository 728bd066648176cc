#include "lca/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace lca {

int mono_degree(const Mono& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

bool MonoLess::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a < b;
}

Poly::Poly(long c) {
    if (c != 0) terms_.emplace(Mono{}, Rat(c));
}

Poly::Poly(const Rat& c) {
    if (c != 0) terms_.emplace(Mono{}, c);
}

Poly Poly::variable(Var v, unsigned exp) {
    Poly p;
    if (exp == 0) return Poly(1);
    Mono m{};
    m[static_cast<int>(v)] = static_cast<std::uint16_t>(exp);
    p.terms_.emplace(m, Rat(1));
    return p;
}

Poly Poly::monomial(const Mono& m, const Rat& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Mono{};
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::invalid_argument("Poly: not a constant");
    return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Mono m;
            for (int i = 0; i < kNumVars; ++i)
                m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly& Poly::scale(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
}

bool Poly::contains(Var v) const {
    int idx = static_cast<int>(v);
    for (const auto& [m, c] : terms_)
        if (m[idx] > 0) return true;
    return false;
}

int Poly::degree(Var v) const {
    if (terms_.empty()) return -1;
    int idx = static_cast<int>(v), d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[idx]));
    return d;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

Poly Poly::substitute(Var v, const Poly& r) const {
    if (!contains(v)) return *this;
    int idx = static_cast<int>(v);
    int dv = degree(v);
    // Precompute r^0..r^dv once.
    std::vector<Poly> powers;
    powers.reserve(dv + 1);
    powers.push_back(Poly(1));
    for (int k = 1; k <= dv; ++k) powers.push_back(powers.back() * r);

    Poly out;
    for (const auto& [m, c] : terms_) {
        int e = m[idx];
        Mono rest = m;
        rest[idx] = 0;
        out += Poly::monomial(rest, c) * powers[e];
    }
    return out;
}

Poly Poly::eval_param(Var v, const Rat& q) const {
    if (!var_is_param(v))
        throw std::invalid_argument(std::string("eval_param: '") +
                                    kVarNames[static_cast<int>(v)] +
                                    "' is not a formal parameter");
    int idx = static_cast<int>(v);
    Poly out;
    for (const auto& [m, c] : terms_) {
        int e = m[idx];
        Mono rest = m;
        rest[idx] = 0;
        Rat coef = c;
        for (int k = 0; k < e; ++k) coef *= q;
        out.add_term(rest, coef);
    }
    return out;
}

Poly Poly::coeff_of(Var v, unsigned k) const {
    int idx = static_cast<int>(v);
    Poly out;
    for (const auto& [m, c] : terms_) {
        if (m[idx] != k) continue;
        Mono rest = m;
        rest[idx] = 0;
        out.add_term(rest, c);
    }
    return out;
}

std::map<int, Poly> Poly::decompose_by(Var v) const {
    int idx = static_cast<int>(v);
    std::map<int, Poly> out;
    for (const auto& [m, c] : terms_) {
        Mono rest = m;
        rest[idx] = 0;
        out[m[idx]].add_term(rest, c);
    }
    return out;
}

namespace {

std::string mono_str(const Mono& m) {
    std::string s;
    for (int i = 0; i < kNumVars; ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += kVarNames[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

} // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest graded-lex monomial first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::string ms = mono_str(m);
        if (ms.empty()) {
            os << rat_str(a);
        } else {
            if (a != 1) os << rat_str(a) << "*";
            os << ms;
        }
        first = false;
    }
    return os.str();
}

Poly pvar(Var v) { return Poly::variable(v); }
Poly pconst(long c) { return Poly(c); }
Poly pconst(const Rat& c) { return Poly(c); }

} // namespace lca
