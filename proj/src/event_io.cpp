#include "evprop/event_io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace evprop {

namespace {

constexpr size_t kRecordBytes = 13;

bool has_csv_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

int64_t parse_field(const char*& p, const char* end, const std::string& path, size_t line) {
    int64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc()) {
        fail(path, "parse error at line " + std::to_string(line));
    }
    p = next;
    return value;
}

} // namespace

EventBuffer read_events(const std::string& path) {
    return has_csv_extension(path) ? read_events_csv(path) : read_events_binary(path);
}

EventBuffer read_events_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    EventBuffer events;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("t_us", 0) == 0) continue; // header
        const char* p = line.data();
        const char* end = p + line.size();
        Event e;
        e.t = parse_field(p, end, path, line_no);
        for (int field = 0; field < 3; ++field) {
            if (p == end || *p != ',') fail(path, "expected ',' at line " + std::to_string(line_no));
            ++p;
            const int64_t v = parse_field(p, end, path, line_no);
            if (field == 0) e.x = static_cast<uint16_t>(v);
            if (field == 1) e.y = static_cast<uint16_t>(v);
            if (field == 2) {
                if (v != 0 && v != 1) {
                    fail(path, "polarity must be 0 or 1 at line " + std::to_string(line_no));
                }
                e.polarity = v == 1 ? 1 : -1;
            }
        }
        events.push_back(e);
    }
    return events;
}

EventBuffer read_events_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    in.seekg(0, std::ios::end);
    const auto size = static_cast<size_t>(in.tellg());
    in.seekg(0);
    if (size % kRecordBytes != 0) {
        fail(path, "truncated record at byte offset " +
                       std::to_string(size - size % kRecordBytes));
    }
    std::vector<char> raw(size);
    in.read(raw.data(), static_cast<std::streamsize>(size));
    if (!in) fail(path, "read failed");

    EventBuffer events(size / kRecordBytes);
    for (size_t i = 0; i < events.size(); ++i) {
        const char* rec = raw.data() + i * kRecordBytes;
        uint64_t t;
        uint16_t x, y;
        std::memcpy(&t, rec, 8);
        std::memcpy(&x, rec + 8, 2);
        std::memcpy(&y, rec + 10, 2);
        const uint8_t p = static_cast<uint8_t>(rec[12]);
        if (p > 1) {
            fail(path, "bad polarity byte at offset " + std::to_string(i * kRecordBytes + 12));
        }
        events[i] = Event{static_cast<int64_t>(t), x, y, static_cast<int8_t>(p == 1 ? 1 : -1)};
    }
    return events;
}

void write_events(const std::string& path, const EventBuffer& events) {
    if (has_csv_extension(path)) {
        write_events_csv(path, events);
    } else {
        write_events_binary(path, events);
    }
}

void write_events_csv(const std::string& path, const EventBuffer& events) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open for writing");
    out << "t_us,x,y,p\n";
    for (const Event& e : events) {
        out << e.t << ',' << e.x << ',' << e.y << ',' << (e.polarity > 0 ? 1 : 0) << '\n';
    }
    if (!out) fail(path, "write failed");
}

void write_events_binary(const std::string& path, const EventBuffer& events) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    std::array<char, kRecordBytes> rec;
    for (const Event& e : events) {
        const uint64_t t = static_cast<uint64_t>(e.t);
        std::memcpy(rec.data(), &t, 8);
        std::memcpy(rec.data() + 8, &e.x, 2);
        std::memcpy(rec.data() + 10, &e.y, 2);
        rec[12] = e.polarity > 0 ? 1 : 0;
        out.write(rec.data(), rec.size());
    }
    if (!out) fail(path, "write failed");
}

} // namespace evprop
