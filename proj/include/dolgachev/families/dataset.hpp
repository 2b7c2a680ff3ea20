#pragma once

// Shipped datasets: manifest lookup, content-hash verification and parsing.

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dolgachev/poly/ops.hpp"
#include "dolgachev/poly/text.hpp"

namespace dolgachev {

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 failed");
    }
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DatasetError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Write to a sibling temporary, then rename over the target.
inline void write_file_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!(out << bytes)) throw DatasetError("cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

// DOLGACHEV_DATA_DIR in the environment wins over the build-time default.
inline std::string data_dir() {
    if (const char* env = std::getenv("DOLGACHEV_DATA_DIR"); env && *env) return env;
#ifdef DOLGACHEV_DATA_DIR
    return DOLGACHEV_DATA_DIR;
#else
    return "data";
#endif
}

struct DatasetEntry {
    std::string id, path, kind, sha256;
    std::map<std::string, Bidegree> expected_bidegrees;
};

class Manifest {
public:
    static Manifest load(const std::string& dir = data_dir()) {
        Manifest m;
        m.dir_ = dir;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(dir + "/manifest.json"));
        } catch (const nlohmann::json::exception& e) {
            throw DatasetError(std::string("manifest: ") + e.what());
        }
        if (j.value("format", "") != "dolgachev-manifest/1") throw DatasetError("manifest: unknown format");
        for (auto& d : j.at("datasets")) {
            DatasetEntry e;
            e.id = d.at("id");
            e.path = d.at("path");
            e.kind = d.at("kind");
            e.sha256 = d.at("sha256");
            if (d.contains("expected_bidegrees"))
                for (auto& [k, v] : d["expected_bidegrees"].items()) e.expected_bidegrees[k] = {v.at(0), v.at(1)};
            m.entries_.push_back(std::move(e));
        }
        return m;
    }

    const std::string& dir() const { return dir_; }
    const std::vector<DatasetEntry>& entries() const { return entries_; }
    const DatasetEntry& entry(const std::string& id) const {
        for (auto& e : entries_)
            if (e.id == id) return e;
        throw DatasetError("unknown dataset " + id);
    }

    // Raw bytes after hash verification.
    std::string bytes(const std::string& id) const {
        const auto& e = entry(id);
        std::string b = read_file(dir_ + "/" + e.path);
        if (sha256_hex(b) != e.sha256) throw DatasetError(id + ": content hash mismatch");
        return b;
    }

    PolyDocument document(const std::string& id) const { return parse_document(bytes(id)); }

private:
    std::string dir_;
    std::vector<DatasetEntry> entries_;
};

// Checks every expected bidegree; returns the names whose bidegree differs.
inline std::vector<std::string> audit_bidegrees(const PolyDocument& doc, const DatasetEntry& e,
                                                const WeightTable& W = WeightTable::standard()) {
    std::vector<std::string> bad;
    for (auto& [name, want] : e.expected_bidegrees) {
        const auto& f = doc.get(name);
        auto got = f.is_zero() ? std::optional<Bidegree>{} : try_bidegree(f, W);
        if (f.is_constant() && want == Bidegree(0, 0)) continue;
        if (!got || *got != want) bad.push_back(name);
    }
    return bad;
}

}  // namespace dolgachev
