#ifndef LCA_RAT_HPP
#define LCA_RAT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lca {

// Exact rational scalar. GMP keeps values canonical (lowest terms,
// positive denominator) as long as every value is built through the
// helpers below; raw mpq_class(num, den) does NOT canonicalize.
using Rat = mpq_class;

inline Rat rat(long n) { return Rat(n); }

inline Rat rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a" or "a/b" with optional sign.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_parse: empty string");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_parse: bad rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// true iff q is an integer that fits in a long.
inline bool rat_fits_long(const Rat& q) {
    return rat_is_integer(q) && q.get_num().fits_slong_p();
}

inline long rat_to_long(const Rat& q) {
    if (!rat_fits_long(q)) throw std::invalid_argument("rat_to_long: not a small integer");
    return q.get_num().get_si();
}

} // namespace lca

#endif
