from rest_framework import serializers

from uncertainty_app.error_messages import (DIMS_FIELD_ERROR,
                                            HIDDEN_DIMS_REQUIRED_ERROR,
                                            MARGIN_RANGE_ERROR,
                                            SCALE_RANGE_ERROR,
                                            UNKNOWN_CONFIG_KEY_ERROR)
from uncertainty_app.models.train_config_model import TrainConfig


class DimsField(serializers.Field):
    """Comma separated layer widths, e.g. ``64,64``; an empty value means no layers."""

    default_error_messages = {
        'invalid': DIMS_FIELD_ERROR,
    }

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [part for part in data.replace(' ', '').split(',') if part]
        try:
            dims = tuple(int(part) for part in data)
        except (TypeError, ValueError):
            self.fail('invalid')
        if any(dim < 1 for dim in dims):
            self.fail('invalid')
        return dims

    def to_representation(self, value):
        return ','.join(str(dim) for dim in value)


# Helper shared by both margin fields: m must lie in [0, 1).
def validate_margin(value):
    if not 0.0 <= value < 1.0:
        raise serializers.ValidationError(MARGIN_RANGE_ERROR.format(margin=value))
    return value


def validate_scale(value):
    if value <= 0.0:
        raise serializers.ValidationError(SCALE_RANGE_ERROR.format(scale=value))
    return value


class TrainConfigSerializer(serializers.Serializer):
    embed_dim = serializers.IntegerField(min_value=1, required=False)
    hidden_dims = DimsField(required=False)
    head_hidden_dims = DimsField(required=False)
    batch_size = serializers.IntegerField(min_value=1, required=False)
    lr0 = serializers.FloatField(min_value=0.0, required=False)
    max_epochs = serializers.IntegerField(min_value=1, required=False)
    s_sketch = serializers.FloatField(required=False, validators=[validate_scale])
    m_s = serializers.FloatField(required=False, validators=[validate_margin])
    s_shape = serializers.FloatField(required=False, validators=[validate_scale])
    m_v = serializers.FloatField(required=False, validators=[validate_margin])
    momentum = serializers.FloatField(min_value=0.0, max_value=0.999999, required=False)
    seed = serializers.IntegerField(min_value=0, required=False)
    views = serializers.IntegerField(min_value=1, required=False)

    def get_fields(self):
        fields = super().get_fields()
        # ``lambda`` is a keyword, so the field is attached here.
        fields['lambda'] = serializers.FloatField(source='lam', min_value=0.0, required=False)
        return fields

    def validate_hidden_dims(self, value):
        if not value:
            raise serializers.ValidationError(HIDDEN_DIMS_REQUIRED_ERROR)
        return value

    def validate(self, attrs):
        unknown = sorted(set(self.initial_data) - set(self.fields))
        if unknown:
            raise serializers.ValidationError({key: UNKNOWN_CONFIG_KEY_ERROR for key in unknown})
        return attrs

    def to_config(self, base=None):
        base = base or TrainConfig()
        return base.with_overrides(**self.validated_data)


def load_train_config(values, base=None):
    """Validate a ``{key: text}`` mapping (a parsed config file) into a TrainConfig."""
    serializer = TrainConfigSerializer(data=values)
    serializer.is_valid(raise_exception=True)
    return serializer.to_config(base)
