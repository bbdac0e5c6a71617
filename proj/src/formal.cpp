#include "tiltkit/formal.hpp"

#include <sstream>

namespace tiltkit {

std::string Mult::str() const { return omega ? "w" : std::to_string(count); }

FormalSum FormalSum::single(const std::string& symbol, Mult m) {
    FormalSum s;
    s.add(symbol, m);
    return s;
}

void FormalSum::add(const std::string& symbol, Mult m) {
    if (!m.omega && m.count == 0) return;
    auto it = parts_.find(symbol);
    if (it == parts_.end())
        parts_.emplace(symbol, m);
    else
        it->second = it->second + m;
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
    FormalSum s = *this;
    for (const auto& [sym, m] : o.parts_) s.add(sym, m);
    return s;
}

FormalSum FormalSum::omega_power() const {
    FormalSum s;
    for (const auto& [sym, m] : parts_) s.add(sym, Mult::w());
    return s;
}

std::string FormalSum::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [sym, m] : parts_) {
        if (!first) os << " + ";
        first = false;
        os << sym;
        if (m.omega)
            os << "^(w)";
        else if (m.count != 1)
            os << "^(" << m.count << ")";
    }
    return os.str();
}

std::string FormalExactSequence::str() const {
    std::ostringstream os;
    os << "0 -> " << start;
    for (const auto& t : terms) os << " -> " << t.str();
    os << " -> 0";
    return os.str();
}

std::string RewriteStep::augmented_str() const {
    std::ostringstream os;
    os << "0 -> " << before.start;
    for (std::size_t i = 0; i < before.terms.size(); ++i) {
        os << " -> ";
        if (i + 1 == position || i == position)
            os << before.terms[i].str() << " + " << added_power.str();
        else
            os << before.terms[i].str();
    }
    os << " -> 0";
    return os.str();
}

std::vector<FormalExactSequence> GoodTiltResult::intermediates() const {
    std::vector<FormalExactSequence> out;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) out.push_back(steps[i].absorbed);
    return out;
}

GoodTiltResult good_tilt_formal(const FormalExactSequence& cores) {
    if (cores.terms.empty()) throw std::invalid_argument("coresolution needs at least one term");
    for (const auto& t : cores.terms)
        if (t.empty()) throw std::invalid_argument("coresolution has an empty term");
    GoodTiltResult out;
    const std::size_t n = cores.terms.size() - 1;
    FormalExactSequence cur = cores;
    // stage s absorbs an omega power at position n - s + 1, working leftwards
    for (std::size_t s = 1; s <= n; ++s) {
        const std::size_t pos = n - s + 1;
        FormalSum w = cur.terms[pos].omega_power();
        RewriteStep step;
        step.position = pos;
        step.added_power = w;
        step.before = cur;
        FormalExactSequence next = cur;
        next.terms[pos - 1] = next.terms[pos - 1] + w;
        // X ⊕ X^(w) = X^(w) at the absorbing position
        next.terms[pos] = w;
        step.absorbed = next;
        cur = next;
        out.steps.push_back(std::move(step));
    }
    out.final_sequence = cur;
    out.t_prime = cur.terms.empty() ? FormalSum() : cur.terms[0];
    return out;
}

}  // namespace tiltkit
