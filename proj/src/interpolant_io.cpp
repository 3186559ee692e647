#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "clutterscan/error.hpp"
#include "clutterscan/interpolant.hpp"

namespace clutterscan {

namespace {

constexpr const char* kMagic = "clutterscan-interpolant 1";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token) {
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw Error(ErrorCode::ParseError, "bad number '" + token + "'");
    return v;
}

long long parse_int(const std::string& token) {
    long long v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        throw Error(ErrorCode::ParseError, "bad integer '" + token + "'");
    return v;
}

}  // namespace

void write_interpolant(std::ostream& os, const HolderInterpolant& h) {
    const auto& p = h.params();
    os << kMagic << "\n";
    os << "k " << p.k << "\n";
    os << "d " << p.d << "\n";
    os << "alpha " << format_double(p.alpha) << "\n";
    os << "beta " << format_double(p.beta) << "\n";
    os << "r0 " << p.r0 << "\n";
    os << "eps " << format_double(h.eps()) << "\n";
    os << "eps_prime " << format_double(h.eps_prime()) << "\n";
    os << "c2 " << format_double(h.c2()) << "\n";
    os << "nodes " << h.nodes().size() << "\n";
    for (std::size_t i = 0; i < h.nodes().size(); ++i) {
        const auto& node = h.nodes()[i];
        os << "node";
        for (int m : h.cell_of(i)) os << ' ' << m;
        for (Eigen::Index a = 0; a < node.x.size(); ++a) os << ' ' << format_double(node.x(a));
        for (Eigen::Index c = 0; c < node.y.cols(); ++c)
            for (Eigen::Index r = 0; r < node.y.rows(); ++r) os << ' ' << format_double(node.y(r, c));
        os << "\n";
    }
}

HolderInterpolant read_interpolant(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kMagic) throw Error(ErrorCode::ParseError, "missing header line");
    std::map<std::string, std::string> header;
    const char* keys[] = {"k", "d", "alpha", "beta", "r0", "eps", "eps_prime", "c2", "nodes"};
    for (const char* key : keys) {
        if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "truncated header");
        std::istringstream ls(line);
        std::string name, value, extra;
        ls >> name >> value;
        if (name != key || value.empty() || (ls >> extra))
            throw Error(ErrorCode::ParseError, "expected '" + std::string(key) + " <value>', got '" + line + "'");
        header[name] = value;
    }
    const auto params = HolderParams::make(static_cast<int>(parse_int(header["k"])),
                                           static_cast<int>(parse_int(header["d"])), parse_double(header["alpha"]),
                                           parse_double(header["beta"]), static_cast<int>(parse_int(header["r0"])));
    const auto count = parse_int(header["nodes"]);
    if (count < 0) throw Error(ErrorCode::ParseError, "negative node count");
    const auto jet_len = static_cast<Eigen::Index>(params.jet_size());

    std::vector<JetPoint> nodes;
    std::vector<std::vector<long long>> cells;
    for (long long i = 0; i < count; ++i) {
        if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "truncated node list");
        std::istringstream ls(line);
        std::string token;
        ls >> token;
        if (token != "node") throw Error(ErrorCode::ParseError, "expected a node line");
        std::vector<std::string> tokens;
        while (ls >> token) tokens.push_back(token);
        const auto expected = static_cast<std::size_t>(2 * params.k + params.codim() * jet_len);
        if (tokens.size() != expected) throw Error(ErrorCode::ParseError, "node line has the wrong length");
        std::size_t at = 0;
        std::vector<long long> cell;
        for (int a = 0; a < params.k; ++a) cell.push_back(parse_int(tokens[at++]));
        JetPoint node{Vector(params.k), Matrix(params.codim(), jet_len)};
        for (int a = 0; a < params.k; ++a) node.x(a) = parse_double(tokens[at++]);
        for (Eigen::Index c = 0; c < jet_len; ++c)
            for (Eigen::Index r = 0; r < params.codim(); ++r) node.y(r, c) = parse_double(tokens[at++]);
        nodes.push_back(std::move(node));
        cells.push_back(std::move(cell));
    }
    auto h = HolderInterpolant::restore(std::move(nodes), params, parse_double(header["eps"]),
                                        parse_double(header["eps_prime"]), parse_double(header["c2"]));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto actual = h.cell_of(i);
        for (std::size_t a = 0; a < actual.size(); ++a)
            if (actual[a] != cells[i][a]) throw Error(ErrorCode::ParseError, "stored cell does not match x");
    }
    return h;
}

}  // namespace clutterscan
