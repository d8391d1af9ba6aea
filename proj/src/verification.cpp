// verification helpers
