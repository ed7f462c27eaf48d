#include "asec/external_estimator.hpp"

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace asec {

const char *to_string(ExternalFault fault) {
    switch (fault) {
    case ExternalFault::spawn: return "spawn failure";
    case ExternalFault::malformed: return "malformed response";
    case ExternalFault::contract: return "contract violation";
    case ExternalFault::timeout: return "timeout";
    case ExternalFault::process_exit: return "process exit";
    }
    return "unknown";
}

namespace {

bool parse_number(std::string_view token, double &value) {
    if (token.empty())
        return false;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc() && ptr == token.data() + token.size();
}

} // namespace

Interval parse_estimate_reply(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
            continue;
        }
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
            ++end;
        fields.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    if (fields.size() != 2)
        throw ExternalFaultError(ExternalFault::malformed, "expected '<lo> <hi>', got '" +
                                                               std::string(line) + "'");
    Interval result;
    if (!parse_number(fields[0], result.lo) || !parse_number(fields[1], result.hi))
        throw ExternalFaultError(ExternalFault::malformed, "expected '<lo> <hi>', got '" +
                                                               std::string(line) + "'");
    if (!std::isfinite(result.lo) || result.lo < 0.0 || std::isnan(result.hi))
        throw ExternalFaultError(ExternalFault::contract,
                                 "invalid bounds '" + std::string(line) + "'");
    if (result.lo > result.hi)
        throw ExternalFaultError(ExternalFault::contract,
                                 "lower bound exceeds upper bound in '" + std::string(line) + "'");
    return result;
}

ExternalEstimatorClient::ExternalEstimatorClient(ExternalEstimatorConfig config)
    : config(std::move(config)) {
    if (this->config.command.empty())
        throw ExternalFaultError(ExternalFault::spawn, "empty estimator command");
    std::signal(SIGPIPE, SIG_IGN);
}

ExternalEstimatorClient::~ExternalEstimatorClient() {
    stop();
}

void ExternalEstimatorClient::start() {
    int in_pipe[2];
    int out_pipe[2];
    if (pipe(in_pipe) != 0)
        throw ExternalFaultError(ExternalFault::spawn, std::strerror(errno));
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        throw ExternalFaultError(ExternalFault::spawn, std::strerror(errno));
    }
    // exec failure is reported through a close-on-exec pipe.
    int err_pipe[2];
    if (pipe2(err_pipe, O_CLOEXEC) != 0)
        throw ExternalFaultError(ExternalFault::spawn, std::strerror(errno));

    std::vector<char *> argv;
    for (std::string &arg : config.command)
        argv.push_back(arg.data());
    argv.push_back(nullptr);

    pid_t pid = fork();
    if (pid < 0)
        throw ExternalFaultError(ExternalFault::spawn, std::strerror(errno));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        execvp(argv[0], argv.data());
        int code = errno;
        ssize_t ignored = write(err_pipe[1], &code, sizeof code);
        (void)ignored;
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    int code = 0;
    ssize_t n = read(err_pipe[0], &code, sizeof code);
    close(err_pipe[0]);
    child = pid;
    to_child = in_pipe[1];
    from_child = out_pipe[0];
    buffer.clear();
    if (n == sizeof code) {
        stop();
        throw ExternalFaultError(ExternalFault::spawn,
                                 "cannot execute '" + config.command[0] + "': " +
                                     std::strerror(code));
    }
}

void ExternalEstimatorClient::stop() {
    if (to_child >= 0)
        close(to_child);
    if (from_child >= 0)
        close(from_child);
    to_child = from_child = -1;
    if (child > 0) {
        kill(child, SIGKILL);
        int status = 0;
        waitpid(child, &status, 0);
    }
    child = -1;
    buffer.clear();
}

std::string ExternalEstimatorClient::read_line() {
    const auto deadline = std::chrono::steady_clock::now() + config.timeout;
    for (;;) {
        const auto newline = buffer.find('\n');
        if (newline != std::string::npos) {
            std::string line = buffer.substr(0, newline);
            buffer.erase(0, newline + 1);
            return line;
        }
        const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remaining.count() <= 0)
            throw ExternalFaultError(ExternalFault::timeout,
                                     "no reply within " + std::to_string(config.timeout.count()) +
                                         " ms");
        pollfd pfd{from_child, POLLIN, 0};
        int ready = poll(&pfd, 1, static_cast<int>(remaining.count()));
        if (ready < 0) {
            if (errno == EINTR)
                continue;
            throw ExternalFaultError(ExternalFault::process_exit, std::strerror(errno));
        }
        if (ready == 0)
            continue;
        char chunk[512];
        ssize_t n = read(from_child, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw ExternalFaultError(ExternalFault::process_exit, std::strerror(errno));
        }
        if (n == 0)
            throw ExternalFaultError(ExternalFault::process_exit,
                                     "estimator closed its output");
        buffer.append(chunk, static_cast<std::size_t>(n));
    }
}

Interval ExternalEstimatorClient::request(std::string_view action_name, int tier) {
    std::lock_guard lock(mutex);
    if (child < 0)
        start();
    const auto begin = std::chrono::steady_clock::now();
    std::string message = "ESTIMATE ";
    message.append(action_name);
    message += ' ';
    message += std::to_string(tier);
    message += '\n';
    try {
        std::size_t written = 0;
        while (written < message.size()) {
            ssize_t n = write(to_child, message.data() + written, message.size() - written);
            if (n < 0) {
                if (errno == EINTR)
                    continue;
                throw ExternalFaultError(ExternalFault::process_exit, std::strerror(errno));
            }
            written += static_cast<std::size_t>(n);
        }
        std::string line = read_line();
        Interval result = parse_estimate_reply(line);
        last_latency_ms_ = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - begin)
                               .count();
        return result;
    } catch (const ExternalFaultError &err) {
        // The stream position is unknown after a timeout or exit.
        if (err.fault() == ExternalFault::timeout || err.fault() == ExternalFault::process_exit)
            stop();
        throw;
    }
}

Interval ExternalEstimatorClient::estimate(const GroundAction &action, int tier) {
    return request(action.name, tier);
}

} // namespace asec
