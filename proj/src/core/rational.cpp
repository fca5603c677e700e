#include "core/rational.hpp"

namespace miniomt {

std::optional<Rational> rat_from_string(const std::string& s) {
    if (s.empty()) return std::nullopt;
    // mpq_class accepts "p/q" but silently tolerates some garbage; validate
    // the character set first.
    bool seen_digit = false;
    bool seen_slash = false;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '-') {
            if (i != 0 && s[i - 1] != '/') return std::nullopt;
        } else if (c == '/') {
            if (seen_slash || !seen_digit) return std::nullopt;
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit || s.back() == '/' || s.back() == '-') return std::nullopt;
    Rational q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rational& q) {
    return q.get_str();
}

Integer rat_floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer rat_ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

}  // namespace miniomt
