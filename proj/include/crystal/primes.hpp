#pragma once

#include <cstdint>
#include <vector>

namespace crystal {

/// All primes p <= limit (sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

bool is_prime(std::uint64_t n);

}  // namespace crystal
