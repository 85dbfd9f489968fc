#pragma once

#include <stdexcept>
#include <string>

namespace aesha3 {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// usage mistakes surface as std::invalid_argument, everything below as
// a distinct subclass so callers can react per category.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad key material: wrong length, non-lowercase-hex text, empty key file.
class MalformedKeyError : public Error {
public:
    using Error::Error;
};

// Ciphertext whose length is not a positive multiple of the block size.
class MalformedCiphertextError : public Error {
public:
    using Error::Error;
};

// Structurally valid ciphertext whose final block does not carry a valid
// PKCS#7 suffix.
class MalformedPaddingError : public Error {
public:
    using Error::Error;
};

// File-system failures, always carrying the offending path in the message.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace aesha3
