// gasloop: automated gas optimization for Solidity smart contracts
// Copyright 2026 The gasloop Authors.
// SPDX-License-Identifier: Apache-2.0
#include "gasloop/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>

namespace gasloop {

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          int timeout_seconds) {
    ProcessResult result;
    if (argv.empty()) {
        result.spawn_failed = true;
        return result;
    }

    int in_pipe[2], out_pipe[2], err_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
        result.spawn_failed = true;
        return result;
    }

    const pid_t pid = fork();
    if (pid < 0) {
        result.spawn_failed = true;
        return result;
    }

    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(in_pipe[0]); close(in_pipe[1]);
        close(out_pipe[0]); close(out_pipe[1]);
        close(err_pipe[0]); close(err_pipe[1]);
        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }

    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);

    // Write stdin then poll both output pipes until EOF or timeout.
    size_t written = 0;
    fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
    fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
    fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

    bool in_open = true, out_open = true, err_open = true;
    if (stdin_data.empty()) {
        close(in_pipe[1]);
        in_open = false;
    }
    const auto deadline = time(nullptr) + timeout_seconds;
    char buf[65536];

    while (out_open || err_open || in_open) {
        if (time(nullptr) > deadline) {
            kill(pid, SIGKILL);
            break;
        }
        pollfd fds[3];
        int n = 0;
        int in_idx = -1, out_idx = -1, err_idx = -1;
        if (in_open) { fds[n] = {in_pipe[1], POLLOUT, 0}; in_idx = n++; }
        if (out_open) { fds[n] = {out_pipe[0], POLLIN, 0}; out_idx = n++; }
        if (err_open) { fds[n] = {err_pipe[0], POLLIN, 0}; err_idx = n++; }
        if (poll(fds, static_cast<nfds_t>(n), 250) < 0 && errno != EINTR) break;

        if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
            if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
                close(in_pipe[1]);
                in_open = false;
            } else {
                const ssize_t w = write(in_pipe[1], stdin_data.data() + written,
                                        std::min<size_t>(65536, stdin_data.size() - written));
                if (w > 0) written += static_cast<size_t>(w);
                if (w < 0 && errno != EAGAIN && errno != EINTR) {
                    close(in_pipe[1]);
                    in_open = false;
                }
                if (written == stdin_data.size()) {
                    close(in_pipe[1]);
                    in_open = false;
                }
            }
        }
        auto drain = [&](int idx, int fd, std::string& sink, bool& open_flag) {
            if (idx < 0 || !(fds[idx].revents & (POLLIN | POLLHUP))) return;
            const ssize_t r = read(fd, buf, sizeof(buf));
            if (r > 0) {
                sink.append(buf, static_cast<size_t>(r));
            } else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR)) {
                close(fd);
                open_flag = false;
            }
        };
        drain(out_idx, out_pipe[0], result.out, out_open);
        drain(err_idx, err_pipe[0], result.err, err_open);
    }
    if (out_open) close(out_pipe[0]);
    if (err_open) close(err_pipe[0]);
    if (in_open) close(in_pipe[1]);

    int status = 0;
    waitpid(pid, &status, 0);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (result.exit_code == 127 && result.out.empty()) result.spawn_failed = true;
    return result;
}

std::string find_in_path(const std::string& name) {
    const char* path = std::getenv("PATH");
    if (path == nullptr) return {};
    std::stringstream ss(path);
    std::string dir;
    while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        const auto candidate = std::filesystem::path(dir) / name;
        std::error_code ec;
        if (std::filesystem::exists(candidate, ec) && access(candidate.c_str(), X_OK) == 0)
            return candidate.string();
    }
    return {};
}

}  // namespace gasloop
