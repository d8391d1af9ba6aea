// segment-restricted structures; see segments implementation below
