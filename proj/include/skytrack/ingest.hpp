#pragma once

// Frame-sequence, ground-truth and trajectory persistence.
//
// Sequence CSV: header "frame,t,sensor,x,y,z", one row per point; an empty
// frame is declared by a row with empty sensor and coordinate fields.
// Sequence BIN: little-endian; magic "SKTL", u32 version (1), then per
// frame: u32 index, f64 t, u32 count, count x 3 f64 coordinates, count x u8
// sensor tags.
// Ground truth CSV: rows "t,x,y,z", strictly increasing t, optional header.
// Trajectory CSV: header "t,x,y,z,detected".
//
// All numbers are written with std::to_chars (shortest round-trip form) and
// parsed with std::from_chars, so text I/O is locale-independent and
// round-trips bit-exactly.

#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "skytrack/geometry.hpp"
#include "skytrack/trajectory.hpp"

namespace skytrack {

struct Frame {
    std::uint32_t frame_index = 0;
    double t = 0.0;
    std::vector<TimedPoint> points;  // may be empty; every point carries (t, frame_index)
};

struct SequenceCloud {
    std::vector<Frame> frames;  // ordered by frame_index, contiguous from 0

    std::size_t n() const { return frames.size(); }

    std::size_t total_points() const {
        std::size_t total = 0;
        for (const Frame& f : frames) total += f.points.size();
        return total;
    }

    // Sequence time span extended by one mean frame interval, so a sequence
    // sampled at a constant rate covers n / rate seconds.
    double duration() const {
        if (frames.size() < 2) return 0.0;
        const double span = frames.back().t - frames.front().t;
        return span + span / static_cast<double>(frames.size() - 1);
    }

    std::vector<double> frame_timestamps() const {
        std::vector<double> ts;
        ts.reserve(frames.size());
        for (const Frame& f : frames) ts.push_back(f.t);
        return ts;
    }
};

struct GroundTruthSample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 pos() const { return {x, y, z}; }
};

struct GroundTruth {
    std::vector<GroundTruthSample> samples;  // strictly increasing t
};

enum class SequenceFormat { CSV, BIN };

struct LoadDiagnostics {
    std::size_t rejected_nonfinite = 0;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

inline bool parse_u32(std::string_view s, std::uint32_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

inline std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + path);
}

inline void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

inline void put_f64(std::string& out, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    for (int shift = 0; shift < 64; shift += 8)
        out.push_back(static_cast<char>((bits >> shift) & 0xff));
}

class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    bool done() const { return pos_ == data_.size(); }

    std::uint32_t u32() {
        require(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint8_t u8() {
        require(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

    double f64() {
        require(8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += 8;
        double d;
        std::memcpy(&d, &bits, sizeof(d));
        return d;
    }

private:
    void require(std::size_t n) const {
        if (pos_ + n > data_.size()) throw Error("truncated file");
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'S', 'K', 'T', 'L'};
constexpr std::uint32_t kBinVersion = 1;

}  // namespace detail

inline SequenceFormat format_from_path(const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0)
        return SequenceFormat::BIN;
    return SequenceFormat::CSV;
}

inline SequenceCloud load_sequence_csv(const std::string& path,
                                       LoadDiagnostics* diag = nullptr) {
    const std::vector<std::string> lines = detail::read_lines(path);
    SequenceCloud seq;
    LoadDiagnostics local;
    bool any_row = false;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string_view line = detail::strip_cr(lines[ln]);
        if (line.empty()) continue;
        if (ln == 0 && line == "frame,t,sensor,x,y,z") continue;

        const auto fields = detail::split_csv(line);
        const std::string line_tag = "line " + std::to_string(ln + 1) + ": ";
        if (fields.size() != 6) throw Error(line_tag + "malformed row");

        std::uint32_t frame = 0;
        double t = 0.0;
        if (!detail::parse_u32(fields[0], frame) || !detail::parse_double(fields[1], t))
            throw Error(line_tag + "malformed row");
        any_row = true;

        if (seq.frames.empty() || frame == seq.frames.back().frame_index + 1) {
            if (seq.frames.empty() && frame != 0)
                throw Error(line_tag + "expected frame 0");
            if (!seq.frames.empty() && t < seq.frames.back().t)
                throw Error("time regression at frame " + std::to_string(frame));
            seq.frames.push_back(Frame{frame, t, {}});
        } else if (frame == seq.frames.back().frame_index) {
            if (t != seq.frames.back().t)
                throw Error(line_tag + "frame timestamp mismatch");
        } else {
            throw Error(line_tag + "expected frame " +
                        std::to_string(seq.frames.back().frame_index + 1));
        }

        const bool empty_marker = fields[2].empty() && fields[3].empty() &&
                                  fields[4].empty() && fields[5].empty();
        if (empty_marker) continue;

        double x = 0.0, y = 0.0, z = 0.0;
        if (!detail::parse_double(fields[3], x) || !detail::parse_double(fields[4], y) ||
            !detail::parse_double(fields[5], z))
            throw Error(line_tag + "malformed row");
        Sensor sensor;
        if (fields[2] == "avia")
            sensor = Sensor::Avia;
        else if (fields[2] == "mid360")
            sensor = Sensor::Mid360;
        else
            throw Error(line_tag + "malformed row");

        TimedPoint p{x, y, z, t, sensor, frame};
        if (!p.finite()) {
            ++local.rejected_nonfinite;
            continue;
        }
        seq.frames.back().points.push_back(p);
    }

    if (!any_row) throw Error("empty sequence");
    if (diag) *diag = local;
    return seq;
}

inline SequenceCloud load_sequence_bin(const std::string& path,
                                       LoadDiagnostics* diag = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();

    detail::ByteReader reader(data);
    if (data.size() < 8) throw Error(data.empty() ? "empty sequence" : "truncated file");
    char magic[4];
    for (char& c : magic) c = static_cast<char>(reader.u8());
    if (std::memcmp(magic, detail::kMagic, 4) != 0) throw Error("bad magic");
    if (reader.u32() != detail::kBinVersion) throw Error("unsupported version");

    SequenceCloud seq;
    LoadDiagnostics local;
    while (!reader.done()) {
        const std::uint32_t index = reader.u32();
        const double t = reader.f64();
        const std::uint32_t count = reader.u32();
        const std::uint32_t expected =
            seq.frames.empty() ? 0 : seq.frames.back().frame_index + 1;
        if (index != expected)
            throw Error("expected frame " + std::to_string(expected));
        if (!seq.frames.empty() && t < seq.frames.back().t)
            throw Error("time regression at frame " + std::to_string(index));

        Frame frame{index, t, {}};
        frame.points.reserve(count);
        std::vector<double> coords(static_cast<std::size_t>(count) * 3);
        for (double& c : coords) c = reader.f64();
        for (std::uint32_t i = 0; i < count; ++i) {
            const std::uint8_t tag = reader.u8();
            if (tag > 1) throw Error("bad sensor tag");
            TimedPoint p{coords[3 * i], coords[3 * i + 1], coords[3 * i + 2], t,
                         static_cast<Sensor>(tag), index};
            if (!p.finite()) {
                ++local.rejected_nonfinite;
                continue;
            }
            frame.points.push_back(p);
        }
        seq.frames.push_back(std::move(frame));
    }

    if (seq.frames.empty()) throw Error("empty sequence");
    if (diag) *diag = local;
    return seq;
}

inline SequenceCloud load_sequence(const std::string& path, SequenceFormat format,
                                   LoadDiagnostics* diag = nullptr) {
    return format == SequenceFormat::CSV ? load_sequence_csv(path, diag)
                                         : load_sequence_bin(path, diag);
}

inline void save_sequence_csv(const SequenceCloud& seq, const std::string& path) {
    std::string out = "frame,t,sensor,x,y,z\n";
    for (const Frame& f : seq.frames) {
        const std::string prefix =
            std::to_string(f.frame_index) + "," + detail::format_double(f.t) + ",";
        if (f.points.empty()) {
            out += prefix;
            out += ",,,\n";
            continue;
        }
        for (const TimedPoint& p : f.points) {
            out += prefix;
            out += sensor_name(p.sensor);
            out += ',';
            out += detail::format_double(p.x);
            out += ',';
            out += detail::format_double(p.y);
            out += ',';
            out += detail::format_double(p.z);
            out += '\n';
        }
    }
    detail::write_file(path, out);
}

inline void save_sequence_bin(const SequenceCloud& seq, const std::string& path) {
    std::string out;
    out.append(detail::kMagic, 4);
    detail::put_u32(out, detail::kBinVersion);
    for (const Frame& f : seq.frames) {
        detail::put_u32(out, f.frame_index);
        detail::put_f64(out, f.t);
        detail::put_u32(out, static_cast<std::uint32_t>(f.points.size()));
        for (const TimedPoint& p : f.points) {
            detail::put_f64(out, p.x);
            detail::put_f64(out, p.y);
            detail::put_f64(out, p.z);
        }
        for (const TimedPoint& p : f.points)
            out.push_back(static_cast<char>(static_cast<std::uint8_t>(p.sensor)));
    }
    detail::write_file(path, out);
}

inline void save_sequence(const SequenceCloud& seq, const std::string& path,
                          SequenceFormat format) {
    if (format == SequenceFormat::CSV)
        save_sequence_csv(seq, path);
    else
        save_sequence_bin(seq, path);
}

inline GroundTruth load_ground_truth(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    GroundTruth gt;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string_view line = detail::strip_cr(lines[ln]);
        if (line.empty()) continue;
        const auto fields = detail::split_csv(line);
        const std::string line_tag = "line " + std::to_string(ln + 1) + ": ";
        if (fields.size() != 4) throw Error(line_tag + "malformed row");

        GroundTruthSample s;
        if (!detail::parse_double(fields[0], s.t)) {
            if (ln == 0) continue;  // tolerate a header line
            throw Error(line_tag + "malformed row");
        }
        if (!detail::parse_double(fields[1], s.x) || !detail::parse_double(fields[2], s.y) ||
            !detail::parse_double(fields[3], s.z))
            throw Error(line_tag + "malformed row");
        if (!gt.samples.empty()) {
            if (s.t == gt.samples.back().t) throw Error("duplicate gt timestamp");
            if (s.t < gt.samples.back().t)
                throw Error("time regression at line " + std::to_string(ln + 1));
        }
        gt.samples.push_back(s);
    }
    if (gt.samples.empty()) throw Error("empty ground truth");
    return gt;
}

inline void save_ground_truth(const GroundTruth& gt, const std::string& path) {
    std::string out;
    for (const GroundTruthSample& s : gt.samples) {
        out += detail::format_double(s.t);
        out += ',';
        out += detail::format_double(s.x);
        out += ',';
        out += detail::format_double(s.y);
        out += ',';
        out += detail::format_double(s.z);
        out += '\n';
    }
    detail::write_file(path, out);
}

inline void save_trajectory(const Trajectory& traj, const std::string& path) {
    if (traj.samples.empty()) throw Error("nothing to save");
    std::string out = "t,x,y,z,detected\n";
    for (const TrajectorySample& s : traj.samples) {
        out += detail::format_double(s.t);
        out += ',';
        out += detail::format_double(s.x);
        out += ',';
        out += detail::format_double(s.y);
        out += ',';
        out += detail::format_double(s.z);
        out += ',';
        out += s.detected ? '1' : '0';
        out += '\n';
    }
    detail::write_file(path, out);
}

inline Trajectory load_trajectory(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    Trajectory traj;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string_view line = detail::strip_cr(lines[ln]);
        if (line.empty()) continue;
        if (ln == 0 && line == "t,x,y,z,detected") continue;
        const auto fields = detail::split_csv(line);
        const std::string line_tag = "line " + std::to_string(ln + 1) + ": ";
        if (fields.size() != 5) throw Error(line_tag + "malformed row");
        TrajectorySample s;
        if (!detail::parse_double(fields[0], s.t) || !detail::parse_double(fields[1], s.x) ||
            !detail::parse_double(fields[2], s.y) || !detail::parse_double(fields[3], s.z))
            throw Error(line_tag + "malformed row");
        if (fields[4] == "1")
            s.detected = true;
        else if (fields[4] == "0")
            s.detected = false;
        else
            throw Error(line_tag + "malformed row");
        if (!traj.samples.empty() && s.t <= traj.samples.back().t)
            throw Error("time regression at line " + std::to_string(ln + 1));
        traj.samples.push_back(s);
    }
    if (traj.samples.empty()) throw Error("empty trajectory");
    return traj;
}

}  // namespace skytrack
