#ifndef CBN_DEADLINE_HPP
#define CBN_DEADLINE_HPP

#include <chrono>
#include <optional>

namespace cbn {

/// Cooperative wall-clock limit polled between atomic steps of each phase.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;
    static Deadline after(double seconds) {
        Deadline d;
        d.m_at = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const { return m_at && Clock::now() >= *m_at; }
    bool bounded() const { return m_at.has_value(); }

private:
    std::optional<Clock::time_point> m_at;
};

} // namespace cbn

#endif // CBN_DEADLINE_HPP
