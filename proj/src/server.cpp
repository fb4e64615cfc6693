#include "striderig/server.hpp"

#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "striderig/engine.hpp"
#include "striderig/errors.hpp"
#include "striderig/jsonl.hpp"

namespace striderig {
namespace {

bool send_all(int fd, const std::string& text) {
  const char* p = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    // MSG_NOSIGNAL: a vanished client must not SIGPIPE the whole server
    const ssize_t n = ::send(fd, p, left, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  return true;
}

bool send_line(int fd, const std::string& line) {
  return send_all(fd, line + '\n');
}

std::string error_line(std::size_t line_no, const std::string& what) {
  // hand-rolled on purpose: `what` came from our own exceptions, but quotes
  // still need escaping to keep the line valid JSON
  std::string esc;
  for (char c : what) {
    if (c == '"' || c == '\\') esc += '\\';
    esc += c;
  }
  return "{\"error\":\"" + esc + "\",\"line\":" + std::to_string(line_no) + '}';
}

void handle_session(int fd, ServeOptions opts) {
  if (opts.idle_timeout_s > 0.0) {
    timeval tv{};
    tv.tv_sec = static_cast<long>(opts.idle_timeout_s);
    tv.tv_usec = static_cast<long>(
        std::lround((opts.idle_timeout_s - static_cast<double>(tv.tv_sec)) * 1e6));
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  }

  Engine engine(opts.cfg, opts.calibration);
  std::vector<TickRecord> records;
  std::string acc;
  std::size_t line_no = 0;
  char buf[4096];

  bool open = true;
  while (open) {
    const ssize_t n = ::read(fd, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      break;  // timeout or hard error: finalize what we have
    }
    if (n == 0) break;  // client half-closed: flush metrics below
    acc.append(buf, static_cast<std::size_t>(n));

    std::size_t start = 0;
    for (std::size_t nl = acc.find('\n', start); nl != std::string::npos;
         nl = acc.find('\n', start)) {
      std::string line = acc.substr(start, nl - start);
      start = nl + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      ++line_no;
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        const TrackingFrame frame = parse_frame_line(line, line_no);
        if (const auto rec = engine.feed(frame)) {
          records.push_back(*rec);
          if (!send_line(fd, record_to_line(*rec))) {
            open = false;
            break;
          }
        }
      } catch (const EngineError& e) {
        if (!send_line(fd, error_line(line_no, e.what()))) {
          open = false;
          break;
        }
      }
    }
    acc.erase(0, start);
  }

  const auto metrics =
      compute_metrics(records, engine.events(), opts.cfg.goal_m);
  send_line(fd, metrics_to_json(metrics));
  ::close(fd);
}

}  // namespace

void serve_stream(const ServeOptions& opts, std::atomic<bool>* stop,
                  std::atomic<int>* bound_port) {
  opts.cfg.validate();

  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0)
    throw EngineError(std::string("socket: ") + std::strerror(errno));

  const int one = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_ANY);
  addr.sin_port = htons(static_cast<uint16_t>(opts.port));
  if (::bind(listener, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0) {
    const int err = errno;
    ::close(listener);
    throw EngineError("cannot bind port " + std::to_string(opts.port) + ": " +
                      std::strerror(err));
  }
  if (::listen(listener, 16) < 0) {
    const int err = errno;
    ::close(listener);
    throw EngineError(std::string("listen: ") + std::strerror(err));
  }

  if (bound_port) {
    sockaddr_in actual{};
    socklen_t len = sizeof(actual);
    ::getsockname(listener, reinterpret_cast<sockaddr*>(&actual), &len);
    bound_port->store(ntohs(actual.sin_port));
  }

  while (!stop || !stop->load()) {
    pollfd pfd{listener, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);  // short timeout keeps `stop` live
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) continue;
    const int client = ::accept(listener, nullptr, nullptr);
    if (client < 0) continue;
    std::thread(handle_session, client, opts).detach();
  }
  ::close(listener);
}

}  // namespace striderig
