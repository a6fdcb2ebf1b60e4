//! Expected parse of `fixtures/e2e_10.csv`.

pub struct Expected {
    pub data: &'static [(&'static str, &'static str)],
    pub text: &'static [&'static str],
}

/// Hand-tokenized: whitespace split, then leading/trailing . , ! ? ; : ( ) [ ] " ' peeled off.
pub const GOLDEN: [Expected; 10] = [
    Expected {
        data: &[
            ("name", "The Vaults"),
            ("eatType", "pub"),
            ("priceRange", "more than £30"),
            ("customer rating", "5 out of 5"),
            ("near", "Café Adriatic"),
        ],
        text: &[
            "The", "Vaults", "pub", "near", "Café", "Adriatic", "has", "a", "5", "star", "rating",
            ".", "Prices", "start", "at", "£30", ".",
        ],
    },
    Expected {
        data: &[
            ("name", "The Cambridge Blue"),
            ("eatType", "pub"),
            ("food", "English"),
            ("priceRange", "cheap"),
            ("near", "Café Brazil"),
        ],
        text: &[
            "Close",
            "to",
            "Café",
            "Brazil",
            ",",
            "The",
            "Cambridge",
            "Blue",
            "pub",
            "serves",
            "delicious",
            "Tuscan",
            "Beef",
            "for",
            "the",
            "cheap",
            "price",
            "of",
            "£10.50",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "The Eagle"),
            ("eatType", "coffee shop"),
            ("food", "Japanese"),
            ("priceRange", "less than £20"),
            ("customer rating", "low"),
            ("area", "riverside"),
            ("familyFriendly", "yes"),
            ("near", "Burger King"),
        ],
        text: &[
            "The",
            "Eagle",
            "is",
            "a",
            "low",
            "rated",
            "coffee",
            "shop",
            "near",
            "Burger",
            "King",
            "and",
            "the",
            "riverside",
            "that",
            "is",
            "family",
            "friendly",
            "and",
            "is",
            "less",
            "than",
            "£20",
            "for",
            "Japanese",
            "food",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "The Mill"),
            ("eatType", "coffee shop"),
            ("food", "French"),
            ("priceRange", "£20-25"),
            ("area", "riverside"),
            ("near", "The Sorrento"),
        ],
        text: &[
            "Located",
            "near",
            "The",
            "Sorrento",
            "is",
            "a",
            "French",
            "Theme",
            "eatery",
            "and",
            "coffee",
            "shop",
            "called",
            "The",
            "Mill",
            ",",
            "with",
            "a",
            "price",
            "range",
            "at",
            "£20-25",
            "it",
            "is",
            "in",
            "the",
            "riverside",
            "area",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "Loch Fyne"),
            ("food", "French"),
            ("customer rating", "high"),
            ("area", "riverside"),
            ("near", "The Rice Boat"),
        ],
        text: &[
            "For",
            "luxurious",
            "French",
            "food",
            ",",
            "the",
            "Loch",
            "Fyne",
            "is",
            "located",
            "by",
            "the",
            "river",
            "next",
            "to",
            "The",
            "Rice",
            "Boat",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "Bibimbap House"),
            ("food", "English"),
            ("priceRange", "moderate"),
            ("area", "riverside"),
            ("near", "Clare Hall"),
        ],
        text: &[
            "Bibimbap",
            "House",
            "is",
            "a",
            "moderately",
            "priced",
            "restaurant",
            "who's",
            "main",
            "cuisine",
            "is",
            "English",
            "food",
            ".",
            "You",
            "will",
            "find",
            "this",
            "local",
            "gem",
            "near",
            "Clare",
            "Hall",
            "in",
            "the",
            "Riverside",
            "area",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "The Rice Boat"),
            ("food", "French"),
            ("customer rating", "3 out of 5"),
            ("near", "Rainbow Vegetarian Café"),
        ],
        text: &[
            "The",
            "Rice",
            "Boat",
            "is",
            "rated",
            "3",
            "out",
            "of",
            "5",
            "and",
            "serves",
            "French",
            "food",
            "(",
            "near",
            "Rainbow",
            "Vegetarian",
            "Café",
            ")",
            "!",
        ],
    },
    Expected {
        data: &[
            ("name", "Alimentum"),
            ("area", "city centre"),
            ("familyFriendly", "no"),
        ],
        text: &[
            "There",
            "is",
            "a",
            "place",
            "in",
            "the",
            "city",
            "centre",
            ",",
            "Alimentum",
            ",",
            "that",
            "is",
            "not",
            "family-friendly",
            ".",
        ],
    },
    Expected {
        data: &[
            ("name", "Zizzi"),
            ("eatType", "pub"),
            ("customer rating", "1 out of 5"),
            ("familyFriendly", "yes"),
        ],
        text: &[
            "Zizzi", "is", "a", "pub", ";", "it's", "kid", "friendly", ",", "but", "rated", "1",
            "out", "of", "5", ":", "\"", "avoid", "\"", ".",
        ],
    },
    Expected {
        data: &[
            ("name", "Cotto"),
            ("eatType", "restaurant"),
            ("food", "Indian"),
        ],
        text: &["Cotto", "?"],
    },
];
