// io.hpp -- file formats, function records, the ortho-derivative dedup
// store, and pipeline checkpoints.
//
// Value-table format: header "#vt n=<n> m=<m>", then one function per
// line as 2^n whitespace-separated decimals in [0, 2^m), x in increasing
// integer order with coordinate x_0 as bit 0.
//
// Quad-basis format: header "#qb n=<n> dim=<d>", then one form per line
// as a hexadecimal mask over the colex monomial order.
#pragma once

#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoderiv.hpp"
#include "quadform.hpp"
#include "sha256.hpp"
#include "vecfun.hpp"

namespace apn {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string vt_line(const VectorialFunction& f) {
    std::ostringstream os;
    for (size_t x = 0; x < f.values.size(); ++x) {
        if (x) os << ' ';
        os << f.values[x];
    }
    return os.str();
}

inline std::string canonical_repr(const VectorialFunction& f) {
    std::ostringstream os;
    os << "vt " << f.n << ' ' << f.m << ' ' << vt_line(f);
    return os.str();
}

inline std::string content_id(const VectorialFunction& f) {
    return Sha256::hex(canonical_repr(f));
}

namespace detail_io {

inline bool parse_kv(const std::string& header, const std::string& key, int& out) {
    auto pos = header.find(key + "=");
    if (pos == std::string::npos) return false;
    out = std::atoi(header.c_str() + pos + key.size() + 1);
    return true;
}

}  // namespace detail_io

inline std::vector<VectorialFunction> import_functions(std::istream& in,
                                                       const std::string& name = "<stream>") {
    std::vector<VectorialFunction> out;
    std::string line;
    int lineno = 0;
    enum { NONE, VT, QB } mode = NONE;
    int n = 0, m = 0, dim = 0;
    std::vector<u32> qb_masks;
    auto flush_qb = [&]() {
        if (mode == QB && !qb_masks.empty()) {
            QuadSpace s(n, qb_masks);
            out.push_back(function_from_space(s));
            qb_masks.clear();
        }
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            flush_qb();
            if (line.rfind("#vt", 0) == 0) {
                if (!detail_io::parse_kv(line, "n", n) || !detail_io::parse_kv(line, "m", m))
                    throw ParseError(name + ":" + std::to_string(lineno) +
                                     ": malformed #vt header");
                mode = VT;
            } else if (line.rfind("#qb", 0) == 0) {
                if (!detail_io::parse_kv(line, "n", n) ||
                    !detail_io::parse_kv(line, "dim", dim))
                    throw ParseError(name + ":" + std::to_string(lineno) +
                                     ": malformed #qb header");
                mode = QB;
            }
            continue;
        }
        if (mode == NONE)
            throw ParseError(name + ":" + std::to_string(lineno) +
                             ": data before a #vt or #qb header");
        if (mode == VT) {
            std::istringstream is(line);
            std::vector<u32> vals;
            long long v;
            while (is >> v) {
                if (v < 0 || v >= (1ll << m))
                    throw ParseError(name + ":" + std::to_string(lineno) +
                                     ": value out of [0, 2^m)");
                vals.push_back(u32(v));
            }
            if (vals.size() != (size_t(1) << n))
                throw ParseError(name + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(size_t(1) << n) + " entries, got " +
                                 std::to_string(vals.size()));
            out.emplace_back(n, m, std::move(vals));
        } else {
            u32 mask = 0;
            std::istringstream is(line);
            is >> std::hex >> mask;
            if (is.fail())
                throw ParseError(name + ":" + std::to_string(lineno) + ": bad hex mask");
            qb_masks.push_back(mask);
        }
    }
    flush_qb();
    return out;
}

inline std::vector<VectorialFunction> import_functions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return import_functions(in, path);
}

// Read #qb blocks as component spaces (one QuadSpace per block).
inline std::vector<QuadSpace> import_spaces(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<QuadSpace> out;
    std::string line;
    int lineno = 0, n = 0, dim = 0;
    std::vector<u32> masks;
    bool have_header = false;
    auto flush = [&]() {
        if (have_header && !masks.empty()) out.emplace_back(n, masks);
        masks.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line.rfind("#qb", 0) == 0) {
            flush();
            if (!detail_io::parse_kv(line, "n", n) || !detail_io::parse_kv(line, "dim", dim))
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": malformed #qb header");
            have_header = true;
            continue;
        }
        if (line[0] == '#') continue;
        if (!have_header)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": data before a #qb header");
        u32 mask = 0;
        std::istringstream is(line);
        is >> std::hex >> mask;
        if (is.fail())
            throw ParseError(path + ":" + std::to_string(lineno) + ": bad hex mask");
        masks.push_back(mask);
    }
    flush();
    return out;
}

inline void export_value_tables(std::ostream& os,
                                const std::vector<VectorialFunction>& fs) {
    int n = -1, m = -1;
    for (const VectorialFunction& f : fs) {
        if (f.n != n || f.m != m) {
            n = f.n;
            m = f.m;
            os << "#vt n=" << n << " m=" << m << '\n';
        }
        os << vt_line(f) << '\n';
    }
}

inline void export_quad_basis(std::ostream& os, const QuadSpace& s) {
    os << "#qb n=" << s.n << " dim=" << s.dim() << '\n';
    os << std::hex;
    for (u64 r : s.basis.rows()) os << r << '\n';
    os << std::dec;
}

struct FunctionRecord {
    std::string id;  // sha256 of the canonical representation
    int n = 0;
    int m = 0;
    std::vector<u32> values;
    std::string od_hash;
    std::string j2_hash;
    std::string profile;  // filled on demand; costly for large n
    std::string method = "imported";  // bent-pipeline | input-pipeline | imported
    u64 seed = 0;
    std::string stage;

    static FunctionRecord from_function(const VectorialFunction& f,
                                        const std::string& method, u64 seed,
                                        const std::string& stage) {
        FunctionRecord r;
        r.id = content_id(f);
        r.n = f.n;
        r.m = f.m;
        r.values = f.values;
        if (f.n == f.m) r.od_hash = Sha256::hex(od_signature_serialize(od_signature(f)));
        {
            std::ostringstream os;
            for (auto& [rank, cnt] : j2_signature(comp_space(f)).counts)
                os << rank << ':' << cnt << ',';
            r.j2_hash = Sha256::hex(os.str());
        }
        r.method = method;
        r.seed = seed;
        r.stage = stage;
        return r;
    }

    VectorialFunction function() const { return {n, m, values}; }

    nlohmann::json to_json() const {
        return {{"id", id},       {"n", n},           {"m", m},
                {"values", values}, {"od_hash", od_hash}, {"j2_hash", j2_hash},
                {"profile", profile},
                {"method", method}, {"seed", seed},     {"stage", stage}};
    }
    static FunctionRecord from_json(const nlohmann::json& j) {
        FunctionRecord r;
        r.id = j.at("id");
        r.n = j.at("n");
        r.m = j.at("m");
        r.values = j.at("values").get<std::vector<u32>>();
        r.od_hash = j.value("od_hash", "");
        r.j2_hash = j.value("j2_hash", "");
        r.profile = j.value("profile", "");
        r.method = j.value("method", "imported");
        r.seed = j.value("seed", u64(0));
        r.stage = j.value("stage", "");
        return r;
    }
};

// One record per distinct full ortho-derivative signature.  The hash is
// the lookup key; the full signature is kept and compared exactly on
// every hit, so hash collisions cannot merge distinct classes.
class DedupStore {
public:
    struct Entry {
        std::string signature;
        FunctionRecord record;
    };

    // returns true iff a new class was created
    bool insert(const VectorialFunction& f, const std::string& method = "imported",
                u64 seed = 0, const std::string& stage = "") {
        std::string sig = od_signature_serialize(od_signature(f));
        std::string key = Sha256::hex(sig);
        std::lock_guard<std::mutex> lock(mtx_);
        auto range = entries_.equal_range(key);
        for (auto it = range.first; it != range.second; ++it)
            if (it->second.signature == sig) return false;
        entries_.emplace(key, Entry{sig, FunctionRecord::from_function(f, method, seed, stage)});
        return true;
    }

    size_t size() const {
        std::lock_guard<std::mutex> lock(mtx_);
        return entries_.size();
    }

    std::vector<FunctionRecord> records() const {
        std::lock_guard<std::mutex> lock(mtx_);
        std::vector<FunctionRecord> out;
        for (auto& [key, e] : entries_) out.push_back(e.record);
        return out;
    }

    void save(std::ostream& os) const {
        std::lock_guard<std::mutex> lock(mtx_);
        for (auto& [key, e] : entries_) {
            nlohmann::json j = e.record.to_json();
            j["od_signature"] = e.signature;
            os << j.dump() << '\n';
        }
    }

    void load(std::istream& is) {
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            nlohmann::json j = nlohmann::json::parse(line);
            FunctionRecord r = FunctionRecord::from_json(j);
            std::string sig = j.value("od_signature", "");
            if (sig.empty()) {
                insert(r.function(), r.method, r.seed, r.stage);
                continue;
            }
            std::string key = Sha256::hex(sig);
            std::lock_guard<std::mutex> lock(mtx_);
            auto range = entries_.equal_range(key);
            bool dup = false;
            for (auto it = range.first; it != range.second; ++it)
                if (it->second.signature == sig) dup = true;
            if (!dup) entries_.emplace(key, Entry{sig, std::move(r)});
        }
    }

private:
    mutable std::mutex mtx_;
    std::multimap<std::string, Entry> entries_;
};

// Pipeline checkpoint: a plain-text stage header, the pending seed
// spaces, then the dedup-store snapshot in database format.
struct BentCheckpoint {
    std::string stage;
    std::vector<QuadSpace> pending;
};

inline void save_checkpoint(const std::string& path, const BentCheckpoint& cp,
                            const DedupStore& store) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot write " + path);
    os << "#stage " << cp.stage << '\n';
    for (const QuadSpace& s : cp.pending) export_quad_basis(os, s);
    os << "#db\n";
    store.save(os);
}

inline BentCheckpoint load_checkpoint(const std::string& path, DedupStore& store) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path);
    BentCheckpoint cp;
    std::string line;
    int n = 0, dim = 0;
    std::vector<u32> masks;
    auto flush = [&]() {
        if (!masks.empty()) {
            cp.pending.emplace_back(n, masks);
            masks.clear();
        }
    };
    bool in_db = false;
    std::ostringstream db;
    while (std::getline(is, line)) {
        if (in_db) {
            db << line << '\n';
            continue;
        }
        if (line.rfind("#stage ", 0) == 0) {
            cp.stage = line.substr(7);
        } else if (line.rfind("#qb", 0) == 0) {
            flush();
            detail_io::parse_kv(line, "n", n);
            detail_io::parse_kv(line, "dim", dim);
        } else if (line == "#db") {
            flush();
            in_db = true;
        } else if (!line.empty()) {
            u32 mask = 0;
            std::istringstream ls(line);
            ls >> std::hex >> mask;
            masks.push_back(mask);
        }
    }
    flush();
    std::istringstream dbs(db.str());
    store.load(dbs);
    return cp;
}

}  // namespace apn
