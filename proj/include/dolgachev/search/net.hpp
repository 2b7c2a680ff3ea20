#pragma once

// Coordinator/worker over TCP with newline-delimited JSON.
//   worker -> {"type":"shard_request","version":H}
//   coord  -> {"type":"shard","id":N,"p":P,"lo":[..],"hi":[..]} | {"type":"done"} | {"type":"error","reason":..}
//   worker -> {"type":"hits","id":N,"hits":[..]}
// H is the space hash; both sides load the same space definition.

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <deque>
#include <functional>
#include <iostream>
#include <map>

#include "dolgachev/search/scan.hpp"

namespace dolgachev {

namespace net_detail {

inline void send_line(int fd, const json& j) {
    std::string s = j.dump() + "\n";
    std::size_t off = 0;
    while (off < s.size()) {
        ssize_t n = ::send(fd, s.data() + off, s.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("send: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

// Appends available bytes; false on EOF or error.
inline bool fill(int fd, std::string& buf) {
    char tmp[65536];
    for (;;) {
        ssize_t n = ::recv(fd, tmp, sizeof tmp, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        buf.append(tmp, static_cast<std::size_t>(n));
        return true;
    }
}

inline std::optional<std::string> take_line(std::string& buf) {
    auto k = buf.find('\n');
    if (k == std::string::npos) return std::nullopt;
    std::string line = buf.substr(0, k);
    buf.erase(0, k + 1);
    return line;
}

}  // namespace net_detail

struct CoordinatorOptions {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;  // 0: ephemeral
    std::uint64_t shards = 8;
    double shard_timeout_s = 30;
    std::string checkpoint;
    std::ostream* log = nullptr;
};

struct CoordinatorStats {
    std::uint64_t reassigned_eof = 0, reassigned_timeout = 0, duplicate_results = 0, version_rejects = 0;
};

class Coordinator {
public:
    Coordinator(SearchSpace space, CoordinatorOptions opt) : space_(std::move(space)), opt_(std::move(opt)) {
        space_.validate();
        shards_ = make_shards(space_, opt_.shards);
        cp_.space_hash = space_.hash();
        cp_.shards_total = shards_.size();
        if (!opt_.checkpoint.empty() && std::filesystem::exists(opt_.checkpoint)) {
            auto old = Checkpoint::from_json(json::parse(read_file(opt_.checkpoint)));
            if (old.space_hash == cp_.space_hash && old.shards_total == cp_.shards_total) cp_ = old;
        }
        std::set<std::uint64_t> done(cp_.completed.begin(), cp_.completed.end());
        for (auto& s : shards_)
            if (!done.count(s.id)) pending_.push_back(s.id);
        listen_();
    }
    ~Coordinator() {
        for (auto& [fd, c] : clients_) ::close(fd);
        if (lfd_ >= 0) ::close(lfd_);
    }
    Coordinator(const Coordinator&) = delete;
    Coordinator& operator=(const Coordinator&) = delete;

    std::uint16_t port() const { return port_; }
    const CoordinatorStats& stats() const { return stats_; }
    double progress() const { return shards_.empty() ? 1.0 : double(cp_.completed.size()) / double(shards_.size()); }

    // Runs until every shard is complete; returns hits sorted by tuple.
    ScanResult run() {
        while (cp_.completed.size() < shards_.size()) step_(100);
        // Tell waiting and subsequent requesters we are finished, then linger briefly.
        for (int fd : waiting_) net_detail::send_line(fd, {{"type", "done"}});
        waiting_.clear();
        auto until = Clock::now() + std::chrono::milliseconds(200);
        while (Clock::now() < until && !clients_.empty()) step_(20);
        ScanResult r;
        r.hits = cp_.hits;
        sort_hits(r.hits);
        r.shards_total = shards_.size();
        r.shards_done = cp_.completed.size();
        return r;
    }

private:
    using Clock = std::chrono::steady_clock;
    struct Client {
        std::string buf;
    };
    struct InFlight {
        int fd;
        Clock::time_point deadline;
    };

    void log_(const std::string& s) {
        if (opt_.log) *opt_.log << "[coordinator] " << s << std::endl;
    }

    void listen_() {
        lfd_ = ::socket(AF_INET, SOCK_STREAM, 0);
        if (lfd_ < 0) throw std::runtime_error("socket failed");
        int one = 1;
        ::setsockopt(lfd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        sockaddr_in a{};
        a.sin_family = AF_INET;
        a.sin_port = htons(opt_.port);
        if (::inet_pton(AF_INET, opt_.host.c_str(), &a.sin_addr) != 1) throw ConfigError("bad host " + opt_.host);
        if (::bind(lfd_, reinterpret_cast<sockaddr*>(&a), sizeof a) < 0 || ::listen(lfd_, 16) < 0)
            throw std::runtime_error(std::string("bind/listen: ") + std::strerror(errno));
        socklen_t len = sizeof a;
        ::getsockname(lfd_, reinterpret_cast<sockaddr*>(&a), &len);
        port_ = ntohs(a.sin_port);
    }

    void release_(int fd, bool timeout) {
        for (auto it = inflight_.begin(); it != inflight_.end();) {
            if (it->second.fd == fd) {
                log_("reassigning shard " + std::to_string(it->first) + (timeout ? " (timeout)" : " (worker lost)"));
                pending_.push_front(it->first);
                ++(timeout ? stats_.reassigned_timeout : stats_.reassigned_eof);
                it = inflight_.erase(it);
            } else {
                ++it;
            }
        }
    }

    void drop_(int fd) {
        ::close(fd);
        clients_.erase(fd);
        waiting_.erase(std::remove(waiting_.begin(), waiting_.end(), fd), waiting_.end());
        release_(fd, false);
    }

    bool assign_(int fd) {
        if (pending_.empty()) return false;
        std::uint64_t id = pending_.front();
        pending_.pop_front();
        inflight_[id] = {fd, Clock::now() + std::chrono::milliseconds(static_cast<long>(opt_.shard_timeout_s * 1000))};
        net_detail::send_line(fd, shards_[id].to_json(space_.p));
        log_("shard " + std::to_string(id) + " -> fd " + std::to_string(fd));
        return true;
    }

    void serve_waiting_() {
        while (!waiting_.empty() && !pending_.empty()) {
            int fd = waiting_.front();
            waiting_.erase(waiting_.begin());
            assign_(fd);
        }
    }

    bool complete_(std::uint64_t id) const {
        return std::find(cp_.completed.begin(), cp_.completed.end(), id) != cp_.completed.end();
    }

    // false: close the connection
    bool handle_(int fd, const json& m) {
        std::string type = m.value("type", "");
        if (type == "shard_request") {
            if (m.value("version", "") != cp_.space_hash) {
                ++stats_.version_rejects;
                net_detail::send_line(fd, {{"type", "error"},
                                           {"reason", "VersionMismatch: coordinator " + cp_.space_hash + ", worker " +
                                                          m.value("version", std::string("?"))}});
                return false;
            }
            if (cp_.completed.size() == shards_.size()) {
                net_detail::send_line(fd, {{"type", "done"}});
                return true;
            }
            if (!assign_(fd)) waiting_.push_back(fd);
            return true;
        }
        if (type == "hits") {
            std::uint64_t id = m.at("id");
            if (id >= shards_.size()) throw std::runtime_error("unknown shard id");
            inflight_.erase(id);
            pending_.erase(std::remove(pending_.begin(), pending_.end(), id), pending_.end());
            if (complete_(id)) {
                ++stats_.duplicate_results;
                return true;
            }
            for (auto& h : m.at("hits")) cp_.hits.push_back(SearchHit::from_json(h));
            cp_.completed.push_back(id);
            if (!opt_.checkpoint.empty()) cp_.save(opt_.checkpoint);
            log_("shard " + std::to_string(id) + " complete (" + std::to_string(cp_.completed.size()) + "/" +
                 std::to_string(shards_.size()) + ")");
            return true;
        }
        net_detail::send_line(fd, {{"type", "error"}, {"reason", "unknown message type '" + type + "'"}});
        return false;
    }

    void step_(int timeout_ms) {
        std::vector<pollfd> fds{{lfd_, POLLIN, 0}};
        for (auto& [fd, c] : clients_) fds.push_back({fd, POLLIN, 0});
        int n = ::poll(fds.data(), fds.size(), timeout_ms);
        if (n < 0 && errno != EINTR) throw std::runtime_error("poll failed");
        if (n > 0) {
            if (fds[0].revents & POLLIN) {
                int c = ::accept(lfd_, nullptr, nullptr);
                if (c >= 0) clients_[c] = {};
            }
            for (std::size_t i = 1; i < fds.size(); ++i) {
                if (!fds[i].revents) continue;
                int fd = fds[i].fd;
                auto& buf = clients_[fd].buf;
                if (!net_detail::fill(fd, buf)) {
                    drop_(fd);
                    continue;
                }
                bool keep = true;
                while (keep) {
                    auto line = net_detail::take_line(clients_[fd].buf);
                    if (!line) break;
                    try {
                        keep = handle_(fd, json::parse(*line));
                    } catch (const std::exception& e) {
                        log_(std::string("bad message: ") + e.what());
                        keep = false;
                    }
                }
                if (!keep) drop_(fd);
            }
        }
        auto now = Clock::now();
        std::vector<int> late;
        for (auto& [id, f] : inflight_)
            if (f.deadline < now) late.push_back(f.fd);
        for (int fd : late) release_(fd, true);
        serve_waiting_();
    }

    SearchSpace space_;
    CoordinatorOptions opt_;
    std::vector<Shard> shards_;
    Checkpoint cp_;
    std::deque<std::uint64_t> pending_;
    std::map<std::uint64_t, InFlight> inflight_;
    std::map<int, Client> clients_;
    std::vector<int> waiting_;
    CoordinatorStats stats_;
    int lfd_ = -1;
    std::uint16_t port_ = 0;
};

struct WorkerOptions {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    double connect_timeout_s = 10;
    std::function<void(const Shard&)> on_receive;  // fault injection hook
    std::ostream* log = nullptr;
};

struct WorkerStats {
    std::uint64_t shards = 0, hits = 0;
};

inline int connect_to(const std::string& host, std::uint16_t port, double timeout_s) {
    auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(static_cast<long>(timeout_s * 1000));
    for (;;) {
        addrinfo hints{}, *res = nullptr;
        hints.ai_family = AF_INET;
        hints.ai_socktype = SOCK_STREAM;
        if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0)
            throw ConfigError("cannot resolve " + host);
        int fd = ::socket(AF_INET, SOCK_STREAM, 0);
        int rc = ::connect(fd, res->ai_addr, res->ai_addrlen);
        ::freeaddrinfo(res);
        if (rc == 0) return fd;
        ::close(fd);
        if (std::chrono::steady_clock::now() > until)
            throw std::runtime_error("cannot connect to " + host + ":" + std::to_string(port));
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
}

inline WorkerStats run_worker(const SearchSpace& space, const WorkerOptions& opt) {
    CompiledSpace cs(space);
    const std::string version = space.hash();
    int fd = connect_to(opt.host, opt.port, opt.connect_timeout_s);
    WorkerStats st;
    std::string buf;
    auto read_msg = [&]() -> json {
        for (;;) {
            if (auto line = net_detail::take_line(buf)) return json::parse(*line);
            if (!net_detail::fill(fd, buf)) {
                ::close(fd);
                throw std::runtime_error("coordinator closed the connection");
            }
        }
    };
    for (;;) {
        net_detail::send_line(fd, {{"type", "shard_request"}, {"version", version}});
        json m = read_msg();
        std::string type = m.value("type", "");
        if (type == "done") break;
        if (type == "error") {
            ::close(fd);
            std::string reason = m.value("reason", "");
            if (reason.rfind("VersionMismatch", 0) == 0) throw VersionMismatch(reason);
            throw std::runtime_error("coordinator error: " + reason);
        }
        if (type != "shard") throw std::runtime_error("unexpected message " + m.dump());
        if (m.at("p").get<std::uint64_t>() != space.p) throw VersionMismatch("prime differs");
        Shard sh = shard_from_box(space, m.at("id"), m.at("lo").get<Tuple>(), m.at("hi").get<Tuple>());
        if (opt.on_receive) opt.on_receive(sh);
        ShardResult r = scan_shard(cs, sh);
        json hits = json::array();
        for (auto& h : r.hits) hits.push_back(h.to_json());
        net_detail::send_line(fd, {{"type", "hits"}, {"id", sh.id}, {"hits", hits}});
        ++st.shards;
        st.hits += r.hits.size();
        if (opt.log) *opt.log << "[worker] shard " << sh.id << ": " << r.hits.size() << " hits" << std::endl;
    }
    ::close(fd);
    return st;
}

}  // namespace dolgachev
