#include "rational.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace uipt {

namespace {
std::mutex fact_mutex;
std::vector<Integer> fact_table = {Integer(1)};
}  // namespace

Integer factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    std::lock_guard<std::mutex> lock(fact_mutex);
    while (static_cast<long>(fact_table.size()) <= n) {
        const long k = static_cast<long>(fact_table.size());
        fact_table.push_back(fact_table.back() * k);
    }
    return fact_table[static_cast<std::size_t>(n)];
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    const bool invert = e < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    if (invert && base == 0) throw std::invalid_argument("pow_rational: zero base with negative exponent");
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), k);
    r.canonicalize();
    if (invert) r = 1 / r;
    return r;
}

std::string decimal_string(const Rational& q, int digits) {
    const bool neg = q < 0;
    Rational a = neg ? Rational(-q) : q;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // Round half away from zero at the last digit.
    Integer scaled_num = a.get_num() * scale * 2 + a.get_den();
    Integer q2 = scaled_num / (a.get_den() * 2);
    std::string s = q2.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1 - s.size()), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    // Trim trailing zeros but keep at least one decimal.
    std::size_t last = s.find_last_not_of('0');
    if (s[last] == '.') ++last;
    s.erase(last + 1);
    return neg ? "-" + s : s;
}

}  // namespace uipt
