#include "conelab/oracle_wire.hpp"

#include "conelab/errors.hpp"

#include <array>
#include <cstring>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include <sys/socket.h>
#include <sys/wait.h>
#include <signal.h>
#include <unistd.h>

namespace conelab::wire {

namespace {

constexpr std::uint64_t kMaxCount = 1ULL << 24;
constexpr std::uint32_t kMaxCommand = 64;
constexpr std::uint32_t kMaxArgs = 16;

template <typename U>
void put_le(std::ostream& out, U v) {
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t b = 0; b < sizeof(U); ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffU);
    out.write(bytes.data(), bytes.size());
}

template <typename U>
bool get_le(std::istream& in, U& v) {
    std::array<unsigned char, sizeof(U)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in.gcount() != static_cast<std::streamsize>(bytes.size())) return false;
    v = 0;
    for (std::size_t b = 0; b < sizeof(U); ++b) v |= static_cast<U>(bytes[b]) << (8 * b);
    return true;
}

std::uint64_t bits(double x) {
    std::uint64_t u = 0;
    std::memcpy(&u, &x, sizeof u);
    return u;
}

double from_bits(std::uint64_t u) {
    double x = 0.0;
    std::memcpy(&x, &u, sizeof x);
    return x;
}

Vec answer(const ConeOracle& o, const Request& r) {
    auto argc = [&](std::size_t want) {
        if (r.args.size() != want) throw InputError("wrong argument count for " + r.command);
        for (const auto& a : r.args) {
            if (a.size() != o.dim) throw InputError("argument of wrong dimension for " + r.command);
        }
    };
    if (r.command == "MEMBER") {
        argc(1);
        switch (o.membership(r.args[0])) {
            case Positivity::Interior: return Vec::Constant(1, 1.0);
            case Positivity::Boundary: return Vec::Constant(1, 0.0);
            case Positivity::Outside: return Vec::Constant(1, -1.0);
        }
    }
    if (r.command == "SYM") {
        argc(2);
        return o.symmetry(r.args[0], r.args[1]);
    }
    if (r.command == "EXP") {
        argc(1);
        return o.exp_chart(r.args[0]);
    }
    throw InputError("unknown oracle command '" + r.command + "'");
}

}  // namespace

void write_array(std::ostream& out, const Vec& v) {
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) put_le<std::uint64_t>(out, bits(v(i)));
}

Vec read_array(std::istream& in) {
    std::uint64_t count = 0;
    if (!get_le(in, count)) throw InputError("oracle stream: truncated array header");
    if (count > kMaxCount) throw InputError("oracle stream: implausible array length");
    Vec v(static_cast<Eigen::Index>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t u = 0;
        if (!get_le(in, u)) throw InputError("oracle stream: truncated array");
        v(static_cast<Eigen::Index>(i)) = from_bits(u);
    }
    return v;
}

void write_request(std::ostream& out, const Request& r) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.command.size()));
    out.write(r.command.data(), static_cast<std::streamsize>(r.command.size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.args.size()));
    for (const auto& a : r.args) write_array(out, a);
}

std::optional<Request> read_request(std::istream& in) {
    std::uint32_t len = 0;
    if (!get_le(in, len)) {
        if (in.gcount() == 0) return std::nullopt;
        throw InputError("oracle stream: truncated request");
    }
    if (len == 0 || len > kMaxCommand) throw InputError("oracle stream: bad command length");
    Request r;
    r.command.resize(len);
    in.read(r.command.data(), len);
    if (in.gcount() != static_cast<std::streamsize>(len)) throw InputError("oracle stream: truncated command");
    std::uint32_t argc = 0;
    if (!get_le(in, argc) || argc > kMaxArgs) throw InputError("oracle stream: bad argument count");
    for (std::uint32_t i = 0; i < argc; ++i) r.args.push_back(read_array(in));
    return r;
}

int serve(const ConeOracle& oracle, std::istream& in, std::ostream& out) {
    int handled = 0;
    while (auto request = read_request(in)) {
        Vec reply;
        try {
            reply = answer(oracle, *request);
        } catch (const Error&) {
            reply = Vec(0);
        }
        write_array(out, reply);
        out.flush();
        ++handled;
    }
    return handled;
}

namespace {

class Child {
public:
    explicit Child(const std::vector<std::string>& argv) {
        if (argv.empty()) throw InputError("oracle command is empty");
        int fds[2];
        if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0) throw UnreliableOracleError("socketpair failed");
        pid_ = ::fork();
        if (pid_ < 0) {
            ::close(fds[0]);
            ::close(fds[1]);
            throw UnreliableOracleError("fork failed");
        }
        if (pid_ == 0) {
            ::dup2(fds[1], STDIN_FILENO);
            ::dup2(fds[1], STDOUT_FILENO);
            ::close(fds[0]);
            ::close(fds[1]);
            std::vector<char*> args;
            for (const auto& s : argv) args.push_back(const_cast<char*>(s.c_str()));
            args.push_back(nullptr);
            ::execvp(args[0], args.data());
            ::_exit(127);
        }
        ::close(fds[1]);
        fd_ = fds[0];
    }

    Child(const Child&) = delete;
    Child& operator=(const Child&) = delete;

    ~Child() {
        if (fd_ >= 0) ::close(fd_);
        if (pid_ > 0) {
            int status = 0;
            ::waitpid(pid_, &status, 0);
        }
    }

    Vec call(const Request& r) {
        std::lock_guard<std::mutex> lock(mu_);
        std::ostringstream frame;
        write_request(frame, r);
        send_all(frame.str());
        std::uint64_t count = 0;
        std::string header = recv_exact(8);
        for (int b = 0; b < 8; ++b) count |= static_cast<std::uint64_t>(static_cast<unsigned char>(header[b])) << (8 * b);
        if (count > kMaxCount) throw UnreliableOracleError("oracle sent an implausible array length");
        std::istringstream body(header + recv_exact(count * 8));
        Vec v = read_array(body);
        if (v.size() == 0) throw UnreliableOracleError("oracle reported an error for " + r.command);
        return v;
    }

private:
    void send_all(const std::string& data) {
        std::size_t done = 0;
        while (done < data.size()) {
            const auto n = ::send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
            if (n <= 0) throw UnreliableOracleError("oracle process is not accepting requests");
            done += static_cast<std::size_t>(n);
        }
    }

    std::string recv_exact(std::size_t count) {
        std::string out(count, '\0');
        std::size_t done = 0;
        while (done < count) {
            const auto n = ::recv(fd_, out.data() + done, count - done, 0);
            if (n <= 0) throw UnreliableOracleError("oracle process closed the connection");
            done += static_cast<std::size_t>(n);
        }
        return out;
    }

    pid_t pid_ = -1;
    int fd_ = -1;
    std::mutex mu_;
};

}  // namespace

ConeOracle subprocess_oracle(const std::vector<std::string>& argv, int dim) {
    if (dim < 1) throw InputError("oracle dimension must be >= 1");
    auto child = std::make_shared<Child>(argv);
    auto checked = [dim](Vec v) {
        if (v.size() != dim) throw UnreliableOracleError("oracle answered with a vector of the wrong dimension");
        return v;
    };
    ConeOracle o;
    o.dim = dim;
    o.membership = [child](const Element& x) {
        const Vec v = child->call({"MEMBER", {x}});
        if (v(0) > 0.5) return Positivity::Interior;
        if (v(0) < -0.5) return Positivity::Outside;
        return Positivity::Boundary;
    };
    o.symmetry = [child, checked](const Element& p, const Element& x) { return checked(child->call({"SYM", {p, x}})); };
    o.exp_chart = [child, checked](const Element& a) { return checked(child->call({"EXP", {a}})); };
    o.base_point = o.exp_chart(Vec::Zero(dim));
    return o;
}

}  // namespace conelab::wire
