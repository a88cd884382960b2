#include "phasecone/warnings.hpp"

#include <algorithm>

namespace phasecone::warn {

namespace {
thread_local std::vector<Capture*> g_frames;
}

const char* code_name(Code code) {
  switch (code) {
    case Code::decay:
      return "decay";
    case Code::truncation:
      return "truncation";
  }
  return "unknown";
}

void emit(Code code, std::string detail) {
  for (Capture* frame : g_frames)
    frame->warnings_.push_back({code, detail});
}

Capture::Capture() { g_frames.push_back(this); }

Capture::~Capture() {
  g_frames.erase(std::remove(g_frames.begin(), g_frames.end(), this),
                 g_frames.end());
}

bool Capture::has(Code code) const { return count(code) > 0; }

std::size_t Capture::count(Code code) const {
  return static_cast<std::size_t>(
      std::count_if(warnings_.begin(), warnings_.end(),
                    [code](const Warning& w) { return w.code == code; }));
}

}  // namespace phasecone::warn
