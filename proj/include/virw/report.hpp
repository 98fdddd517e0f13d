#pragma once

// Verification windows, reports and the deterministic parallel grid runner.

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace virw {

/// Finite truncation of the index domain: |i|,|j| <= i_max, m,n <= m_max, k <= k_max.
struct Window {
    int i_max = 3;
    int m_max = 3;
    int k_max = 5;

    Window() = default;
    Window(int i, int m, int k) : i_max(i), m_max(m), k_max(k) {
        if (i < 0 || m < 0 || k < 0) throw std::invalid_argument("window bounds must be nonnegative");
    }
};

struct ReportRecord {
    std::string check_id;
    int epsilon = 0;  // 0 when the check does not depend on epsilon
    std::vector<std::pair<std::string, long>> point;
    bool pass = true;
    std::string diff;  // canonical difference polynomial, only for failures
};

class VerificationReport {
public:
    void add(ReportRecord r) { records_.push_back(std::move(r)); }
    void append(const VerificationReport& other) {
        records_.insert(records_.end(), other.records_.begin(), other.records_.end());
    }

    const std::vector<ReportRecord>& records() const { return records_; }
    bool passed() const {
        return std::all_of(records_.begin(), records_.end(), [](const auto& r) { return r.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(records_.begin(), records_.end(), [](const auto& r) { return !r.pass; }));
    }

    /// One line per record, then a summary line.
    std::string serialize() const {
        std::string out;
        for (const auto& r : records_) {
            out += "check_id=" + r.check_id + " epsilon=" + std::to_string(r.epsilon) + " point=";
            for (std::size_t q = 0; q < r.point.size(); ++q) {
                if (q) out += ',';
                out += r.point[q].first + "=" + std::to_string(r.point[q].second);
            }
            out += std::string(" status=") + (r.pass ? "pass" : "fail");
            if (!r.pass) out += " diff=\"" + r.diff + "\"";
            out += '\n';
        }
        out += "summary records=" + std::to_string(records_.size()) +
               " failures=" + std::to_string(failures()) +
               " status=" + (passed() ? "pass" : "fail") + '\n';
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json records = nlohmann::json::array();
        for (const auto& r : records_) {
            nlohmann::json point = nlohmann::json::object();
            for (const auto& [k, v] : r.point) point[k] = v;
            nlohmann::json j{{"check_id", r.check_id},
                             {"epsilon", r.epsilon},
                             {"point", point},
                             {"status", r.pass ? "pass" : "fail"}};
            if (!r.pass) j["diff"] = r.diff;
            records.push_back(std::move(j));
        }
        return {{"records", records}, {"status", passed() ? "pass" : "fail"}};
    }

private:
    std::vector<ReportRecord> records_;
};

/// Runs `cell(q)` for q in [0, n) on a worker pool and returns the results
/// in index order, so output never depends on scheduling.
template <class Result>
std::vector<Result> parallel_map(std::size_t n, const std::function<Result(std::size_t)>& cell) {
    std::vector<Result> out(n);
    unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t q = 0; q < n; ++q) out[q] = cell(q);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t q = next++; q < n; q = next++) {
                try {
                    out[q] = cell(q);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace virw
