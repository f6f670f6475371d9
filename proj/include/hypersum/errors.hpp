#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypersum {

/// Base for every protocol-level failure. `kind()` is the stable machine
/// name used in transcripts and CLI output.
class ProtocolError : public std::runtime_error {
public:
    ProtocolError(std::string_view kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    std::string_view kind() const noexcept { return kind_; }

private:
    std::string_view kind_;  // static storage only
};

#define HYPERSUM_ERROR(Name)                                        \
    class Name : public ProtocolError {                             \
    public:                                                         \
        explicit Name(const std::string& what = #Name)              \
            : ProtocolError(#Name, what) {}                         \
    }

// topology
HYPERSUM_ERROR(TooFew);
HYPERSUM_ERROR(NotPowerOfTwo);
HYPERSUM_ERROR(StageOutOfRange);

// crypto
HYPERSUM_ERROR(IntegrityFailure);
HYPERSUM_ERROR(MalformedPlaintext);

// proof system
HYPERSUM_ERROR(StatementViolated);
HYPERSUM_ERROR(SumOverflow);

// ledger state machine
HYPERSUM_ERROR(InvalidWindow);
HYPERSUM_ERROR(WindowNotOpen);
HYPERSUM_ERROR(WindowClosed);
HYPERSUM_ERROR(WindowStillOpen);
HYPERSUM_ERROR(AlreadyRegistered);
HYPERSUM_ERROR(ZeroCommitment);
HYPERSUM_ERROR(NotRegistered);
HYPERSUM_ERROR(RegistrationOpen);
HYPERSUM_ERROR(DuplicateSubmission);
HYPERSUM_ERROR(MissingPeerMessage);
HYPERSUM_ERROR(AlreadyVerified);
HYPERSUM_ERROR(ProofRejected);
HYPERSUM_ERROR(SessionComplete);
HYPERSUM_ERROR(UnknownAddress);

// party
HYPERSUM_ERROR(SecretOutOfRange);
HYPERSUM_ERROR(SessionIncomplete);

// cost model
HYPERSUM_ERROR(InvalidCosts);

// fault harness
HYPERSUM_ERROR(UnexpectedSuccess);

#undef HYPERSUM_ERROR

}  // namespace hypersum
