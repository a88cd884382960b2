#pragma once

#include <string>
#include <vector>

namespace phasecone::warn {

enum class Code {
  decay,       // integrand does not decay to negligible size at the grid edge
  truncation,  // computation strayed outside the trusted truncation region
};

struct Warning {
  Code code;
  std::string detail;
};

const char* code_name(Code code);

// Appends a warning to every capture frame active on this thread.  Warnings
// never alter control flow; with no active frame the warning is dropped.
void emit(Code code, std::string detail);

// RAII collector.  Frames nest; each sees every warning emitted on this
// thread during its lifetime.  Emit only from the thread that owns the frame.
class Capture {
 public:
  Capture();
  ~Capture();
  Capture(const Capture&) = delete;
  Capture& operator=(const Capture&) = delete;

  const std::vector<Warning>& warnings() const { return warnings_; }
  bool has(Code code) const;
  std::size_t count(Code code) const;

 private:
  friend void emit(Code, std::string);
  std::vector<Warning> warnings_;
};

}  // namespace phasecone::warn
