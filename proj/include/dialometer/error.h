#ifndef DIALOMETER_ERROR_H_
#define DIALOMETER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dialometer {

enum class ErrorCode {
  // Input and schema problems.
  kIo,
  kMalformedLine,
  kDuplicateGameId,
  kTargetNotInCandidates,
  kEmptyDialogue,
  kSchema,
  kInvalidArgument,
  // Metric preconditions.
  kEmptyScope,
  kEmptyInput,
  kEmptyCorpus,
  kNoQuestions,
  kAllWordsUsed,
  kGameMismatch,
  kNoAlignedGames,
  kMissingReference,
  kDegenerateBounds,
  kNoCommonMetrics,
  kMissingField,
  kRankOutOfRange,
  kLengthMismatch,
  kTooFewPoints,
  kConstantInput,
  kAlignment,
  kMissingCandidates,
  // Something the library guarantees did not hold.
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// Process exit status for a failure of this kind: 2 for input errors,
// 3 for metric preconditions, 4 for internal invariant breaches.
int ExitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dialometer

#endif  // DIALOMETER_ERROR_H_
