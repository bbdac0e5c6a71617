#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tiltkit {

// Multiplicity in a formal direct sum: a positive integer or omega, with
// cardinal arithmetic m + omega = omega + m = omega + omega = omega.
struct Mult {
    bool omega = false;
    std::uint64_t count = 0;  // meaningful when !omega

    static Mult finite(std::uint64_t n) { return Mult{false, n}; }
    static Mult w() { return Mult{true, 0}; }
    Mult operator+(const Mult& o) const {
        if (omega || o.omega) return w();
        return finite(count + o.count);
    }
    bool operator==(const Mult&) const = default;
    std::string str() const;
};

// Formal direct sum of named summands, e.g. T0 ⊕ T1^(w). Symbols are kept
// sorted for canonical printing and comparison.
class FormalSum {
public:
    FormalSum() = default;
    static FormalSum single(const std::string& symbol, Mult m = Mult::finite(1));

    void add(const std::string& symbol, Mult m);
    FormalSum operator+(const FormalSum& o) const;
    // countable direct sum of copies: every multiplicity becomes omega
    FormalSum omega_power() const;

    bool empty() const { return parts_.empty(); }
    const std::map<std::string, Mult>& parts() const { return parts_; }
    bool operator==(const FormalSum&) const = default;
    std::string str() const;

private:
    std::map<std::string, Mult> parts_;
};

// 0 -> R -> X_0 -> ... -> X_k -> 0 with formal-sum entries.
struct FormalExactSequence {
    std::string start = "R";
    std::vector<FormalSum> terms;

    std::string str() const;
    bool operator==(const FormalExactSequence&) const = default;
};

struct RewriteStep {
    std::size_t position = 0;     // index of the term that absorbs
    FormalSum added_power;        // W^(w), added at position-1 and position
    FormalExactSequence before;   // sequence entering this stage
    FormalExactSequence absorbed; // after X ⊕ X^(w) = X^(w) at `position`

    // the unabsorbed display with the omega power spelled out at both spots
    std::string augmented_str() const;
};

struct GoodTiltResult {
    FormalSum t_prime;                  // T0 ⊕ T1^(w) ⊕ ... ⊕ Tn^(w)
    std::vector<RewriteStep> steps;     // n stages; the last absorbed form is final
    FormalExactSequence final_sequence;
    // the absorbed sequences strictly between input and final
    std::vector<FormalExactSequence> intermediates() const;
};

// Symbolic good-tilting construction: rewrites the coresolution
// 0 -> R -> T_0 -> ... -> T_n -> 0 by repeatedly absorbing omega powers from
// the right, ending with first term T' = T_0 ⊕ T_1^(w) ⊕ ... ⊕ T_n^(w).
GoodTiltResult good_tilt_formal(const FormalExactSequence& cores);

}  // namespace tiltkit
