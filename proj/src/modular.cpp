#include "dwork/modular.hpp"

#include <stdexcept>

namespace dwork {

Int pow_mod(Int b, std::uint64_t e, Int m)
{
    Int r = 1 % m;
    b = mod_reduce(b, m);
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

Int inv_mod(Int a, Int m)
{
    Int g = m, x = 0, x1 = 1, a1 = mod_reduce(a, m);
    while (a1) {
        Int q = g / a1;
        Int t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::domain_error("inv_mod: element is not a unit");
    return mod_reduce(x, m);
}

Int ipow(Int b, int e)
{
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::uint64_t upow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

int valuation(Int x, int p, int cap)
{
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

bool is_prime(Int n)
{
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace dwork
