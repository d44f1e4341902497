#include "oagkit/rational.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace oagkit {

namespace {

// Coordinates are mostly one-limb rationals; recycle their limb blocks per thread.
constexpr std::size_t kClasses = 8;
thread_local void* free_blocks[kClasses + 1] = {};

void* pool_allocate(std::size_t n) {
    const std::size_t c = (n + 7) / 8;
    if (c == 0 || c > kClasses) return std::malloc(n);
    if (void* b = free_blocks[c]) {
        free_blocks[c] = *static_cast<void**>(b);
        return b;
    }
    return std::malloc(c * 8);
}

void pool_free(void* p, std::size_t n) {
    const std::size_t c = n / 8;
    if (c == 0 || c > kClasses) return std::free(p);
    *static_cast<void**>(p) = free_blocks[c];
    free_blocks[c] = p;
}

void* pool_reallocate(void* p, std::size_t old_size, std::size_t new_size) {
    if ((old_size + 7) / 8 == (new_size + 7) / 8 && old_size % 8 == 0) return p;
    void* q = pool_allocate(new_size);
    std::memcpy(q, p, std::min(old_size, new_size));
    pool_free(p, old_size);
    return q;
}

const bool pool_installed = [] {
    mp_set_memory_functions(pool_allocate, pool_reallocate, pool_free);
    return true;
}();

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (ch != ' ' && ch != '+') t += ch;
    if (t.empty()) throw std::invalid_argument("empty rational");
    Rational r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::domain_error("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

int sign(const Rational& r) { return sgn(r); }

bool denominator_coprime_to(const Rational& r, const std::vector<std::int64_t>& primes) {
    for (auto p : primes) {
        Integer q(static_cast<long>(p));
        if (mpz_divisible_p(r.get_den().get_mpz_t(), q.get_mpz_t())) return false;
    }
    return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {
bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
}  // namespace

std::int64_t nth_prime(std::size_t n) {
    std::int64_t p = 1;
    for (std::size_t seen = 0;;) {
        ++p;
        if (is_prime(p) && seen++ == n) return p;
    }
}

std::int64_t prime_index(std::int64_t p) {
    if (!is_prime(p)) return -1;
    std::int64_t idx = 0;
    for (std::int64_t q = 2; q < p; ++q)
        if (is_prime(q)) ++idx;
    return idx;
}

int Coord::sign() const {
    if (int s = sgn(inf)) return s;
    return sgn(fin);
}

std::strong_ordering operator<=>(const Coord& a, const Coord& b) {
    int c = cmp(a.inf, b.inf);
    if (c == 0) c = cmp(a.fin, b.fin);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const Coord& c) {
    if (c.standard()) return to_string(c.fin);
    std::string s = to_string(c.inf) + "F";
    if (sgn(c.fin) > 0) s += "+" + to_string(c.fin);
    if (sgn(c.fin) < 0) s += to_string(c.fin);
    return s;
}

}  // namespace oagkit
