"""Extensions for integrating snapmix types with third-party libraries."""
