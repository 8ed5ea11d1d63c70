#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>

namespace verity::client {

/// FIFO concurrency gate: at most `capacity` holders at once, admitted in
/// arrival order.
class FairLimiter {
public:
    explicit FairLimiter(int capacity) : capacity_(capacity < 1 ? 1 : capacity) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        const std::uint64_t ticket = next_ticket_++;
        cv_.wait(lock, [&] {
            return ticket == next_to_admit_ && in_flight_ < capacity_;
        });
        ++next_to_admit_;
        ++in_flight_;
        cv_.notify_all();
    }

    void release() {
        {
            std::lock_guard lock(mutex_);
            --in_flight_;
        }
        cv_.notify_all();
    }

    class Guard {
    public:
        explicit Guard(FairLimiter& limiter) : limiter_(limiter) { limiter_.acquire(); }
        ~Guard() { limiter_.release(); }
        Guard(const Guard&) = delete;
        Guard& operator=(const Guard&) = delete;

    private:
        FairLimiter& limiter_;
    };

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::uint64_t next_ticket_ = 0;
    std::uint64_t next_to_admit_ = 0;
    int in_flight_ = 0;
    int capacity_;
};

}  // namespace verity::client
