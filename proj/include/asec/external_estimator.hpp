#ifndef ASEC_EXTERNAL_ESTIMATOR_HPP
#define ASEC_EXTERNAL_ESTIMATOR_HPP

#include "asec/estimation.hpp"

#include <chrono>
#include <mutex>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <vector>

namespace asec {

enum class ExternalFault {
    spawn,
    malformed,
    contract,
    timeout,
    process_exit,
};

const char *to_string(ExternalFault fault);

class ExternalFaultError : public ExternalEstimatorError {
public:
    ExternalFaultError(ExternalFault fault, const std::string &detail)
        : ExternalEstimatorError(std::string(to_string(fault)) + ": " + detail), fault_(fault) {}
    ExternalFault fault() const { return fault_; }

private:
    ExternalFault fault_;
};

struct ExternalEstimatorConfig {
    /// argv of the estimator process; argv[0] is looked up in PATH.
    std::vector<std::string> command;
    std::chrono::milliseconds timeout{30000};
};

/// Line protocol client. Each request writes `ESTIMATE <action_name> <tier>\n`
/// to the child's stdin and reads one `<lo> <hi>\n` line from its stdout. The
/// tier is always the last field, so action names may contain spaces.
///
/// After a timeout or a dead child the process is discarded and a fresh one
/// is started on the next request. Requests are serialized.
class ExternalEstimatorClient : public EstimatorBackend {
public:
    explicit ExternalEstimatorClient(ExternalEstimatorConfig config);
    ~ExternalEstimatorClient() override;

    ExternalEstimatorClient(const ExternalEstimatorClient &) = delete;
    ExternalEstimatorClient &operator=(const ExternalEstimatorClient &) = delete;

    Interval estimate(const GroundAction &action, int tier) override;
    Interval request(std::string_view action_name, int tier);

    /// Wall-clock latency of the last successful request.
    double last_latency_ms() const { return last_latency_ms_; }

private:
    void start();
    void stop();
    std::string read_line();

    ExternalEstimatorConfig config;
    pid_t child = -1;
    int to_child = -1;
    int from_child = -1;
    std::string buffer;
    double last_latency_ms_ = 0.0;
    std::mutex mutex;
};

/// Parses one `<lo> <hi>` reply line. Throws ExternalFaultError.
Interval parse_estimate_reply(std::string_view line);

} // namespace asec

#endif
