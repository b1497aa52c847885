#pragma once

#include <string>

#include "evprop/types.hpp"

namespace evprop {

// Canonical event file formats.
//
// Text CSV: header "t_us,x,y,p", one event per line, p in {0,1} mapped to
// {-1,+1}.
//
// Binary: consecutive little-endian records of 13 bytes with no header or
// padding: t (8-byte unsigned microseconds), x (2-byte unsigned),
// y (2-byte unsigned), p (1 byte, 0 or 1).
//
// read_events dispatches on the ".csv" extension; everything else is read as
// binary. Parse failures throw std::runtime_error naming the line (CSV) or
// byte offset (binary).

EventBuffer read_events(const std::string& path);
EventBuffer read_events_csv(const std::string& path);
EventBuffer read_events_binary(const std::string& path);

void write_events(const std::string& path, const EventBuffer& events);
void write_events_csv(const std::string& path, const EventBuffer& events);
void write_events_binary(const std::string& path, const EventBuffer& events);

} // namespace evprop
