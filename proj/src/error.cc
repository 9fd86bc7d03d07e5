#include "dialometer/error.h"

namespace dialometer {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDuplicateGameId: return "DuplicateGameId";
    case ErrorCode::kTargetNotInCandidates: return "TargetNotInCandidates";
    case ErrorCode::kEmptyDialogue: return "EmptyDialogue";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyScope: return "EmptyScope";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kNoQuestions: return "NoQuestions";
    case ErrorCode::kAllWordsUsed: return "AllWordsUsed";
    case ErrorCode::kGameMismatch: return "GameMismatch";
    case ErrorCode::kNoAlignedGames: return "NoAlignedGames";
    case ErrorCode::kMissingReference: return "MissingReference";
    case ErrorCode::kDegenerateBounds: return "DegenerateBounds";
    case ErrorCode::kNoCommonMetrics: return "NoCommonMetrics";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kRankOutOfRange: return "RankOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kConstantInput: return "ConstantInput";
    case ErrorCode::kAlignment: return "AlignmentError";
    case ErrorCode::kMissingCandidates: return "MissingCandidates";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kMalformedLine:
    case ErrorCode::kDuplicateGameId:
    case ErrorCode::kTargetNotInCandidates:
    case ErrorCode::kEmptyDialogue:
    case ErrorCode::kSchema:
    case ErrorCode::kInvalidArgument:
      return 2;
    case ErrorCode::kInternal:
      return 4;
    default:
      return 3;
  }
}

}  // namespace dialometer
