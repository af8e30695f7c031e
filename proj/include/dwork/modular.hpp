#ifndef DWORK_MODULAR_HPP
#define DWORK_MODULAR_HPP

#include <cstdint>
#include <vector>

namespace dwork {

using Int = std::int64_t;
using Wide = __int128;

inline Int mod_reduce(Wide x, Int m)
{
    Int r = static_cast<Int>(x % m);
    return r < 0 ? r + m : r;
}

inline Int mul_mod(Int a, Int b, Int m)
{
    return mod_reduce(static_cast<Wide>(a) * b, m);
}

Int pow_mod(Int b, std::uint64_t e, Int m);
Int inv_mod(Int a, Int m);
Int ipow(Int b, int e);
std::uint64_t upow(std::uint64_t b, int e);

// v_p(x) for x != 0; returns `cap` for x == 0.
int valuation(Int x, int p, int cap);

bool is_prime(Int n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace dwork

#endif
