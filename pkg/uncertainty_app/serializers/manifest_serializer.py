from rest_framework import serializers

from uncertainty_app.data.dataset import NOISE_MODES, Manifest


# Validates the manifest.txt key/value pairs of a dataset directory and builds
# the Manifest dataclass from them.
class ManifestSerializer(serializers.Serializer):
    classes = serializers.IntegerField(min_value=2)
    dim = serializers.IntegerField(min_value=1)
    views = serializers.IntegerField(min_value=1)
    n_train = serializers.IntegerField(min_value=1)
    n_test = serializers.IntegerField(min_value=1)
    n_shape_train = serializers.IntegerField(min_value=1)
    n_shape_test = serializers.IntegerField(min_value=1)
    noise_frac = serializers.FloatField(min_value=0.0, max_value=1.0)
    noise_mode = serializers.ChoiceField(choices=NOISE_MODES)
    seed = serializers.IntegerField(min_value=0)

    def to_manifest(self):
        data = self.validated_data
        return Manifest(**{name: data[name] for name in self.fields})


def load_manifest(values):
    serializer = ManifestSerializer(data=values)
    serializer.is_valid(raise_exception=True)
    return serializer.to_manifest()
